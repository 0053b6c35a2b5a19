#pragma once

/**
 * @file modular.hpp
 * @brief Exact arithmetic in Z_n, its unit group, modular linear solving,
 *        and invariant-factor decomposition of finite abelian groups.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "gex/errors.hpp"

namespace gex {

/// An element of Z_n, normalized to [0, n).
class Residue {
public:
    Residue() : value_(0), modulus_(1) {}
    Residue(long long value, long long modulus)
        : value_(normalize(value, modulus)), modulus_(check_modulus(modulus)) {}

    long long value() const { return value_; }
    long long modulus() const { return modulus_; }

    Residue operator+(Residue rhs) const {
        require_same(rhs);
        return Residue(value_ + rhs.value_, modulus_);
    }
    Residue operator-(Residue rhs) const {
        require_same(rhs);
        return Residue(value_ - rhs.value_, modulus_);
    }
    Residue operator*(Residue rhs) const {
        require_same(rhs);
        return Residue(value_ * rhs.value_, modulus_);
    }
    Residue operator-() const { return Residue(-value_, modulus_); }

    bool operator==(const Residue&) const = default;
    auto operator<=>(const Residue&) const = default;

    static long long normalize(long long v, long long n) {
        check_modulus(n);
        v %= n;
        return v < 0 ? v + n : v;
    }

private:
    static long long check_modulus(long long n) {
        if (n < 1) throw Error("Residue: modulus must be positive");
        return n;
    }
    void require_same(const Residue& rhs) const {
        if (modulus_ != rhs.modulus_)
            throw Error("Residue: mixed moduli " + std::to_string(modulus_) +
                        " and " + std::to_string(rhs.modulus_));
    }

    long long value_;
    long long modulus_;
};

/// A unit k mod n, acting on Z_n as the automorphism x -> k*x.
class AutMultiplier {
public:
    AutMultiplier(long long k, long long modulus)
        : k_(Residue::normalize(k, modulus)), modulus_(modulus) {
        if (std::gcd(k_, modulus_) != 1)
            throw Error("AutMultiplier: " + std::to_string(k_) +
                        " is not a unit mod " + std::to_string(modulus_));
    }

    long long multiplier() const { return k_; }
    long long modulus() const { return modulus_; }

    Residue apply(Residue x) const {
        if (x.modulus() != modulus_) throw Error("AutMultiplier: modulus mismatch");
        return Residue(k_ * x.value(), modulus_);
    }

    AutMultiplier compose(const AutMultiplier& inner) const {
        if (inner.modulus_ != modulus_) throw Error("AutMultiplier: modulus mismatch");
        return AutMultiplier(k_ * inner.k_, modulus_);
    }

    AutMultiplier inverse() const {
        // unit group of Z_n is finite, so some power of k is the inverse
        long long inv = 1, acc = k_ % modulus_;
        while (acc != 1 % modulus_) {
            inv = acc;
            acc = (acc * k_) % modulus_;
        }
        return AutMultiplier(inv, modulus_);
    }

    bool operator==(const AutMultiplier&) const = default;
    auto operator<=>(const AutMultiplier&) const = default;

private:
    long long k_;
    long long modulus_;
};

/// The units of Z_n, i.e. Aut(Z_n). For n = 1 this is the trivial multiplier.
inline std::set<AutMultiplier> unit_group(long long n) {
    if (n < 1) throw Error("unit_group: n must be positive");
    std::set<AutMultiplier> units;
    if (n == 1) {
        units.insert(AutMultiplier(0, 1));
        return units;
    }
    for (long long k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) units.insert(AutMultiplier(k, n));
    return units;
}

/// All x with coefficient * x == rhs (mod n). Empty when unsolvable.
inline std::set<Residue> solve_mod_linear(long long coefficient, Residue rhs) {
    const long long n = rhs.modulus();
    const long long a = Residue::normalize(coefficient, n);
    const long long g = std::gcd(a == 0 ? n : a, n);
    std::set<Residue> solutions;
    if (rhs.value() % g != 0) return solutions;
    // solutions form a coset of size g; find one by scanning a reduced range
    for (long long x = 0; x < n; ++x)
        if ((a * x) % n == rhs.value()) solutions.insert(Residue(x, n));
    return solutions;
}

/// The divisibility chain d1 | d2 | ... | dr of a finite abelian group.
struct InvariantFactors {
    std::vector<long long> factors;  // ascending, each > 1

    long long group_order() const {
        long long p = 1;
        for (long long d : factors) p *= d;
        return p;
    }
    bool operator==(const InvariantFactors&) const = default;
};

namespace detail {

inline std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> ps;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace detail

/// Checks commutativity by testing every element against a greedily grown
/// generating set.
template <class Elem, class Compose>
bool is_abelian(const std::vector<Elem>& elems, Compose op) {
    std::vector<Elem> gens;
    std::set<Elem> closed;
    for (const Elem& x : elems) {
        if (closed.count(x)) continue;
        gens.push_back(x);
        // grow the closure with the new generator
        std::set<Elem> next(closed);
        next.insert(x);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Elem> snapshot(next.begin(), next.end());
            for (const Elem& a : snapshot)
                for (const Elem& g : gens)
                    if (next.insert(op(a, g)).second) grew = true;
        }
        closed = std::move(next);
    }
    for (const Elem& x : elems)
        for (const Elem& g : gens)
            if (!(op(x, g) == op(g, x))) return false;
    return true;
}

/**
 * Invariant-factor decomposition of a finite abelian group given by its
 * element set and a composition oracle. Throws NotAbelian when the oracle
 * reveals a commutativity violation or inconsistent order statistics.
 *
 * Works from element-order statistics: for each prime p the counts
 * #{x : x^(p^k) = e} determine the partition of the p-primary component.
 */
template <class Elem, class Compose>
InvariantFactors invariant_factors(const std::vector<Elem>& elems, Compose op) {
    const long long N = static_cast<long long>(elems.size());
    if (N == 0) throw Error("invariant_factors: empty element set");
    if (N == 1) return InvariantFactors{};

    if (!is_abelian(elems, op)) throw NotAbelian("invariant_factors: group is not abelian");

    // identity: the unique e with e*x == x
    const Elem* identity = nullptr;
    for (const Elem& e : elems)
        if (op(e, elems.front()) == elems.front()) {
            identity = &e;
            break;
        }
    if (!identity) throw Error("invariant_factors: no identity found");

    std::vector<long long> orders;
    orders.reserve(elems.size());
    for (const Elem& x : elems) {
        long long ord = 1;
        Elem acc = x;
        while (!(acc == *identity)) {
            acc = op(acc, x);
            ++ord;
            if (ord > N) throw Error("invariant_factors: element order exceeds group order");
        }
        orders.push_back(ord);
    }

    // per-prime partitions lambda_1 >= lambda_2 >= ...
    std::map<long long, std::vector<long long>> partitions;
    for (long long p : detail::prime_divisors(N)) {
        std::vector<long long> log_counts;  // s_k = log_p #{x : ord(x) | p^k}
        long long pk = 1;
        for (long long k = 0;; ++k) {
            long long count = 0;
            for (long long ord : orders)
                if (pk % ord == 0) ++count;
            long long s = 0, c = count;
            while (c % p == 0) {
                c /= p;
                ++s;
            }
            if (c != 1) throw NotAbelian("invariant_factors: order statistics not a p-power");
            log_counts.push_back(s);
            bool saturated = (count == N || (k > 0 && s == log_counts[k - 1]));
            if (saturated) break;
            pk *= p;
        }
        // m_k = number of partition parts >= k; must be non-increasing
        std::vector<long long> m;
        for (std::size_t k = 1; k < log_counts.size(); ++k)
            m.push_back(log_counts[k] - log_counts[k - 1]);
        for (std::size_t k = 1; k < m.size(); ++k)
            if (m[k] > m[k - 1])
                throw NotAbelian("invariant_factors: inconsistent p-group statistics");
        std::vector<long long> lambda;
        for (long long i = 1; !m.empty() && i <= m[0]; ++i) {
            long long parts = 0;
            for (long long mk : m)
                if (mk >= i) ++parts;
            lambda.push_back(parts);
        }
        partitions[p] = lambda;
    }

    std::size_t rank = 0;
    for (const auto& [p, lambda] : partitions) rank = std::max(rank, lambda.size());

    std::vector<long long> factors(rank, 1);
    // align largest parts together: factors stored descending, then reversed
    for (const auto& [p, lambda] : partitions)
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            long long pe = 1;
            for (long long j = 0; j < lambda[i]; ++j) pe *= p;
            factors[i] *= pe;
        }
    std::reverse(factors.begin(), factors.end());

    InvariantFactors result{factors};
    if (result.group_order() != N)
        throw NotAbelian("invariant_factors: factor product does not match group order");

    // cross-check: element-order statistics of Z_d1 x ... x Z_dr must match.
    // #{x : x^t = e} in the product equals prod_i gcd(d_i, t).
    std::set<long long> order_values(orders.begin(), orders.end());
    for (long long t : order_values) {
        long long expected = 1;
        for (long long d : factors) expected *= std::gcd(d, t);
        long long actual = 0;
        for (long long ord : orders)
            if (t % ord == 0) ++actual;
        if (expected != actual)
            throw NotAbelian("invariant_factors: order multiset mismatch");
    }
    return result;
}

}  // namespace gex
