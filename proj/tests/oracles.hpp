#pragma once

// Independent oracles used by the test suites: brute-force number theory,
// abstract-group order statistics, and a small backtracking isomorphism
// search for multiplication tables. Deliberately naive implementations.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

inline long long brute_totient(long long n) {
    if (n == 1) return 1;
    long long count = 0;
    for (long long k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

/// Element-order multiset of Z_{d1} x ... x Z_{dr}, computed element by element.
inline std::map<long long, long long> product_order_multiset(const std::vector<long long>& ds) {
    long long total = 1;
    for (long long d : ds) total *= d;
    std::map<long long, long long> orders;
    for (long long idx = 0; idx < total; ++idx) {
        long long rest = idx, ord = 1;
        for (long long d : ds) {
            long long t = rest % d;
            rest /= d;
            if (t != 0) ord = std::lcm(ord, d / std::gcd(d, t));
        }
        ++orders[ord];
    }
    return orders;
}

/// A finite group as an explicit multiplication table.
struct Table {
    std::vector<std::vector<int>> mul;

    int size() const { return static_cast<int>(mul.size()); }

    int identity() const {
        for (int e = 0; e < size(); ++e) {
            bool ok = true;
            for (int x = 0; x < size(); ++x)
                if (mul[e][x] != x || mul[x][e] != x) ok = false;
            if (ok) return e;
        }
        return -1;
    }

    long long element_order(int x) const {
        const int e = identity();
        long long ord = 1;
        int acc = x;
        while (acc != e) {
            acc = mul[acc][x];
            ++ord;
        }
        return ord;
    }

    std::map<long long, long long> order_multiset() const {
        std::map<long long, long long> m;
        for (int x = 0; x < size(); ++x) ++m[element_order(x)];
        return m;
    }
};

inline Table cyclic_table(int n) {
    Table t;
    t.mul.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.mul[a][b] = (a + b) % n;
    return t;
}

inline Table product_table(const Table& a, const Table& b) {
    Table t;
    const int na = a.size(), nb = b.size();
    t.mul.assign(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y)
            t.mul[x][y] = a.mul[x / nb][y / nb] * nb + b.mul[x % nb][y % nb];
    return t;
}

inline Table symmetric3_table() {
    // permutations of {0,1,2} in lexicographic one-line order
    std::vector<std::vector<int>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto find = [&](const std::vector<int>& p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    Table t;
    t.mul.assign(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::vector<int> comp(3);  // apply j first, then i
            for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
            t.mul[i][j] = find(comp);
        }
    return t;
}

namespace detail {

inline std::vector<int> close(const Table& t, const std::vector<int>& gens) {
    std::set<int> seen{t.identity()};
    std::vector<int> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int g : gens) {
                if (seen.insert(t.mul[x][g]).second) next.push_back(t.mul[x][g]);
                if (seen.insert(t.mul[g][x]).second) next.push_back(t.mul[g][x]);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

inline std::vector<int> greedy_generators(const Table& t) {
    std::vector<int> gens;
    std::set<int> covered{t.identity()};
    for (int x = 0; x < t.size(); ++x) {
        if (covered.count(x)) continue;
        gens.push_back(x);
        auto c = close(t, gens);
        covered = std::set<int>(c.begin(), c.end());
    }
    return gens;
}

/// Extends the partial map determined by generator images, or fails.
inline bool extend_and_check(const Table& g1, const Table& g2, const std::vector<int>& gens,
                             const std::vector<int>& images) {
    std::vector<int> map(static_cast<std::size_t>(g1.size()), -1);
    map[static_cast<std::size_t>(g1.identity())] = g2.identity();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int& slot = map[static_cast<std::size_t>(gens[i])];
        if (slot != -1 && slot != images[i]) return false;
        slot = images[i];
    }
    // grow by products until stable
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < g1.size(); ++x) {
            if (map[x] == -1) continue;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                int y = g1.mul[x][gens[i]];
                int fy = g2.mul[map[x]][images[i]];
                if (map[y] == -1) {
                    map[y] = fy;
                    grew = true;
                } else if (map[y] != fy) {
                    return false;
                }
            }
        }
    }
    for (int x = 0; x < g1.size(); ++x)
        if (map[x] == -1) return false;
    std::set<int> image_set(map.begin(), map.end());
    if (static_cast<int>(image_set.size()) != g2.size()) return false;
    for (int x = 0; x < g1.size(); ++x)
        for (int y = 0; y < g1.size(); ++y)
            if (map[g1.mul[x][y]] != g2.mul[map[x]][map[y]]) return false;
    return true;
}

inline bool search(const Table& g1, const Table& g2, const std::vector<int>& gens,
                   std::vector<int>& images, std::size_t at) {
    if (at == gens.size()) return extend_and_check(g1, g2, gens, images);
    long long want = g1.element_order(gens[at]);
    for (int candidate = 0; candidate < g2.size(); ++candidate) {
        if (g2.element_order(candidate) != want) continue;
        images[at] = candidate;
        if (search(g1, g2, gens, images, at + 1)) return true;
    }
    return false;
}

}  // namespace detail

/// True iff the two multiplication tables present isomorphic groups
/// (backtracking over generator images; intended for orders <= 48).
inline bool isomorphic(const Table& g1, const Table& g2) {
    if (g1.size() != g2.size()) return false;
    if (g1.order_multiset() != g2.order_multiset()) return false;
    std::vector<int> gens = detail::greedy_generators(g1);
    std::vector<int> images(gens.size(), -1);
    return detail::search(g1, g2, gens, images, 0);
}

}  // namespace oracle
