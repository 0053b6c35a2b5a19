#pragma once

/**
 * @file extension.hpp
 * @brief Category extensions 1 -> Z -> G -> H -> 1 over a finite groupoid H:
 *        the action functor, the 2-cocycle and its axioms, the twisted
 *        composition law, coboundary equivalence, and a small enumerator of
 *        ordinary group extensions of Z_n by Z_m.
 */

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gex/errors.hpp"
#include "gex/groupoid.hpp"
#include "gex/modular.hpp"

namespace gex {

/// Disjoint union of copies of Z_n, one per object.
struct BaseCategory {
    std::vector<ObjectId> objects;
    long long order = 1;  // uniform n across objects
};

/// A transposition morphism z_X^p of the base category.
struct ZMorphism {
    ObjectId object;
    Residue shift;

    bool operator==(const ZMorphism&) const = default;
    auto operator<=>(const ZMorphism&) const = default;
};

/// phi : H -> Grp, each morphism mapped to a multiplicative unit mod n.
struct ActionFunctor {
    std::map<std::string, long long> multipliers;  // morphism label -> unit

    long long at(const HMorphism& h) const {
        auto it = multipliers.find(h.label);
        if (it == multipliers.end())
            throw Error("ActionFunctor: no multiplier for " + h.label);
        return it->second;
    }
};

/// Normalized 2-cocycle: entries on identity pairs are zero and omitted.
class TwoCocycle {
public:
    TwoCocycle() = default;
    TwoCocycle(const Groupoid& shape, long long n,
               std::map<std::pair<std::string, std::string>, long long> entries)
        : entries_() {
        for (auto& [pair, v] : entries) {
            const HMorphism& h2 = shape.by_label(pair.first);
            const HMorphism& h1 = shape.by_label(pair.second);
            if (h1.dst != h2.src)
                throw ValidationError("TwoCocycle: entry on incompatible pair (" +
                                      pair.first + ", " + pair.second + ")");
            long long value = Residue::normalize(v, n);
            if (shape.is_identity(h1) || shape.is_identity(h2)) {
                if (value != 0)
                    throw ValidationError("TwoCocycle: nonzero entry on identity pair (" +
                                          pair.first + ", " + pair.second + ")");
                continue;
            }
            if (value != 0) entries_[pair] = value;
        }
    }

    long long at(const HMorphism& h2, const HMorphism& h1) const {
        auto it = entries_.find({h2.label, h1.label});
        return it == entries_.end() ? 0 : it->second;
    }

    const std::map<std::pair<std::string, std::string>, long long>& entries() const {
        return entries_;
    }

private:
    std::map<std::pair<std::string, std::string>, long long> entries_;
};

/// A morphism (z, h) of the extension category; z lives at t(h).
struct GMorphism {
    Residue z;
    HMorphism h;

    bool operator==(const GMorphism&) const = default;
    auto operator<=>(const GMorphism&) const = default;
};

inline std::string to_string(const GMorphism& g) {
    return "(" + std::to_string(g.z.value()) + ", " + g.h.label + ")";
}

/// phi must send identities to 1 and respect composition.
inline ValidationReport check_action_functor(const Groupoid& H, const ActionFunctor& phi,
                                             long long n) {
    ValidationReport report;
    for (const auto& h : H.morphisms()) {
        auto it = phi.multipliers.find(h.label);
        if (it == phi.multipliers.end()) {
            report.add("phi undefined on " + h.label);
            continue;
        }
        long long k = Residue::normalize(it->second, n);
        if (std::gcd(k == 0 ? n : k, n) != 1)
            report.add("phi(" + h.label + ") = " + std::to_string(k) + " is not a unit mod " +
                       std::to_string(n));
        if (H.is_identity(h) && k != Residue::normalize(1, n))
            report.add("phi(" + h.label + ") = " + std::to_string(k) + " but identities must map to 1");
    }
    if (!report.ok()) return report;
    for (const auto& g1 : H.morphisms())
        for (const auto& g2 : H.morphisms()) {
            if (g1.dst != g2.src) continue;
            const HMorphism& c = H.compose(g2, g1);
            long long lhs = Residue::normalize(phi.at(g2) * phi.at(g1), n);
            long long rhs = Residue::normalize(phi.at(c), n);
            if (lhs != rhs)
                report.add("functoriality fails: phi(" + g2.label + ").phi(" + g1.label + ") = " +
                           std::to_string(lhs) + " but phi(" + c.label + ") = " +
                           std::to_string(rhs));
        }
    return report;
}

/// The cocycle identity on every compatible triple.
inline ValidationReport check_cocycle(const Groupoid& H, const ActionFunctor& phi,
                                      const TwoCocycle& zeta, long long n) {
    ValidationReport report;
    for (const auto& h1 : H.morphisms())
        for (const auto& h2 : H.morphisms()) {
            if (h1.dst != h2.src) continue;
            const HMorphism& h21 = H.compose(h2, h1);
            for (const auto& h3 : H.morphisms()) {
                if (h2.dst != h3.src) continue;
                const HMorphism& h32 = H.compose(h3, h2);
                long long lhs = phi.at(h3) * zeta.at(h2, h1) + zeta.at(h3, h21);
                long long rhs = zeta.at(h3, h2) + zeta.at(h32, h1);
                if (Residue::normalize(lhs, n) != Residue::normalize(rhs, n))
                    report.add("cocycle identity fails on (" + h3.label + ", " + h2.label +
                               ", " + h1.label + ")");
            }
        }
    return report;
}

struct InvalidAction : ValidationError {
    ValidationReport report;
    explicit InvalidAction(ValidationReport r)
        : ValidationError("invalid action functor: " +
                          (r.violations.empty() ? std::string() : r.violations.front())),
          report(std::move(r)) {}
};

struct InvalidCocycle : ValidationError {
    ValidationReport report;
    explicit InvalidCocycle(ValidationReport r)
        : ValidationError("invalid 2-cocycle: " +
                          (r.violations.empty() ? std::string() : r.violations.front())),
          report(std::move(r)) {}
};

/**
 * The extension category G. Morphisms are all pairs (z, h); composition is
 * the twisted law (z2, h2).(z1, h1) = (z2 + phi(h2) z1 + zeta(h2, h1), h2 h1).
 */
class ExtensionCategory {
public:
    ExtensionCategory(BaseCategory base, Groupoid shape, ActionFunctor phi, TwoCocycle zeta)
        : base_(std::move(base)), shape_(std::move(shape)), phi_(std::move(phi)),
          zeta_(std::move(zeta)) {
        if (std::set<ObjectId>(base_.objects.begin(), base_.objects.end()) !=
            std::set<ObjectId>(shape_.objects().begin(), shape_.objects().end()))
            throw ValidationError("ExtensionCategory: base and shape objects differ");
        if (base_.order < 1) throw ValidationError("ExtensionCategory: order must be positive");
    }

    long long order() const { return base_.order; }
    const std::vector<ObjectId>& objects() const { return base_.objects; }
    const Groupoid& shape() const { return shape_; }
    const ActionFunctor& phi() const { return phi_; }
    const TwoCocycle& zeta() const { return zeta_; }

    AutMultiplier phi_of(const HMorphism& h) const {
        return AutMultiplier(phi_.at(h), base_.order);
    }

    GMorphism make(long long shift, const HMorphism& h) const {
        return GMorphism{Residue(shift, base_.order), h};
    }

    GMorphism identity(const ObjectId& x) const { return make(0, shape_.identity(x)); }

    /// All n * |H| morphisms, in shape order then shift order.
    std::vector<GMorphism> morphisms() const {
        std::vector<GMorphism> out;
        out.reserve(shape_.morphisms().size() * static_cast<std::size_t>(base_.order));
        for (const auto& h : shape_.morphisms())
            for (long long z = 0; z < base_.order; ++z) out.push_back(make(z, h));
        return out;
    }

    GMorphism compose(const GMorphism& g2, const GMorphism& g1) const {
        if (g1.h.dst != g2.h.src)
            throw IncompatibleComposition("g_compose: " + to_string(g2) + " . " + to_string(g1));
        const HMorphism& h = shape_.compose(g2.h, g1.h);
        long long z = g2.z.value() + phi_.at(g2.h) * g1.z.value() + zeta_.at(g2.h, g1.h);
        return make(z, h);
    }

    GMorphism inverse(const GMorphism& g) const {
        const HMorphism& hi = shape_.inverse(g.h);
        long long z = -(phi_.at(hi) * g.z.value() + zeta_.at(hi, g.h));
        return make(z, hi);
    }

private:
    BaseCategory base_;
    Groupoid shape_;
    ActionFunctor phi_;
    TwoCocycle zeta_;
};

inline ExtensionCategory build_extension(BaseCategory base, const Groupoid& H,
                                         const ActionFunctor& phi, const TwoCocycle& zeta) {
    if (auto r = check_action_functor(H, phi, base.order); !r.ok()) throw InvalidAction(r);
    if (auto r = check_cocycle(H, phi, zeta, base.order); !r.ok()) throw InvalidCocycle(r);
    return ExtensionCategory(std::move(base), H, phi, zeta);
}

inline GMorphism g_compose(const ExtensionCategory& E, const GMorphism& g2, const GMorphism& g1) {
    return E.compose(g2, g1);
}

inline GMorphism g_inverse(const ExtensionCategory& E, const GMorphism& g) {
    return E.inverse(g);
}

/// The functors I (inject transpositions) and P (forget shifts).
struct ExtensionWitness {
    std::function<GMorphism(const ZMorphism&)> inject;
    std::function<HMorphism(const GMorphism&)> project;
};

inline ExtensionWitness canonical_witness(const ExtensionCategory& E) {
    return ExtensionWitness{
        [&E](const ZMorphism& z) { return E.make(z.shift.value(), E.shape().identity(z.object)); },
        [](const GMorphism& g) { return g.h; },
    };
}

/**
 * The three extension conditions, checked exhaustively against an explicit
 * morphism set (normally ExtensionCategory::morphisms(), but callers may pass
 * a mutated set).
 */
inline ValidationReport verify_extension_axioms(const ExtensionCategory& E,
                                                const std::vector<GMorphism>& morphisms,
                                                const ExtensionWitness& witness) {
    ValidationReport report;
    const long long n = E.order();

    // condition 1: Z, G and H share the object set
    if (E.objects().size() != E.shape().objects().size())
        report.add("condition 1: object counts differ");

    std::set<GMorphism> gset(morphisms.begin(), morphisms.end());

    // condition 2a: I is a functor, injective on morphisms
    std::set<GMorphism> image;
    for (const auto& x : E.objects())
        for (long long p = 0; p < n; ++p) {
            ZMorphism zp{x, Residue(p, n)};
            GMorphism g = witness.inject(zp);
            if (!gset.count(g))
                report.add("condition 2: I(" + x + "^" + std::to_string(p) + ") not a morphism of G");
            if (!image.insert(g).second)
                report.add("condition 2: I not injective at " + to_string(g));
            for (long long q = 0; q < n; ++q) {
                ZMorphism zq{x, Residue(q, n)};
                GMorphism lhs = witness.inject(ZMorphism{x, Residue(p + q, n)});
                GMorphism rhs = E.compose(witness.inject(zp), witness.inject(zq));
                if (!(lhs == rhs)) {
                    report.add("condition 2: I not a functor at object " + x);
                    q = n;  // one report per object is enough
                }
            }
        }

    // condition 2b: P is a functor, surjective on morphisms
    std::set<HMorphism> pimage;
    for (const auto& g : morphisms) pimage.insert(witness.project(g));
    for (const auto& h : E.shape().morphisms())
        if (!pimage.count(h)) report.add("condition 2: P not surjective, missing " + h.label);
    for (const auto& g1 : morphisms)
        for (const auto& g2 : morphisms) {
            if (g1.h.dst != g2.h.src) continue;
            if (!(witness.project(E.compose(g2, g1)) ==
                  E.shape().compose(witness.project(g2), witness.project(g1)))) {
                report.add("condition 2: P not a functor at (" + to_string(g2) + ", " +
                           to_string(g1) + ")");
            }
        }

    // condition 3: P(g1) = P(g2) iff g2 = I(z) . g1 for exactly one z, and the
    // map z -> I(z) . g1 stays inside G (fibers have exactly n members)
    std::map<std::string, std::size_t> fiber_size;
    for (const auto& g : morphisms) ++fiber_size[witness.project(g).label];
    for (const auto& [label, size] : fiber_size)
        if (size != static_cast<std::size_t>(n))
            report.add("condition 3: fiber over " + label + " has " + std::to_string(size) +
                       " morphisms, expected " + std::to_string(n) +
                       " (unique-transposition bijection fails)");
    for (const auto& g1 : morphisms)
        for (const auto& g2 : morphisms) {
            bool same_p = witness.project(g1) == witness.project(g2);
            long long count = 0;
            for (long long p = 0; p < n; ++p) {
                GMorphism iz = witness.inject(ZMorphism{g1.h.dst, Residue(p, n)});
                if (E.compose(iz, g1) == g2) ++count;
            }
            if (same_p && count != 1)
                report.add("condition 3: " + std::to_string(count) + " transpositions carry " +
                           to_string(g1) + " to " + to_string(g2));
            if (!same_p && count != 0)
                report.add("condition 3: unrelated morphisms " + to_string(g1) + " and " +
                           to_string(g2) + " differ by a transposition");
        }
    return report;
}

/// A 1-cochain: one residue per morphism of H, zero on identities.
using OneCochain = std::map<std::string, long long>;

/// The coboundary of a normalized 1-cochain; always a valid 2-cocycle.
inline TwoCocycle coboundary_of(const Groupoid& H, const ActionFunctor& phi,
                                const OneCochain& cochain, long long n) {
    auto value = [&](const HMorphism& h) {
        auto it = cochain.find(h.label);
        return it == cochain.end() ? 0 : Residue::normalize(it->second, n);
    };
    for (const auto& h : H.morphisms())
        if (H.is_identity(h) && value(h) != 0)
            throw ValidationError("coboundary_of: cochain must vanish on identities");
    std::map<std::pair<std::string, std::string>, long long> entries;
    for (const auto& h1 : H.morphisms())
        for (const auto& h2 : H.morphisms()) {
            if (h1.dst != h2.src) continue;
            const HMorphism& h21 = H.compose(h2, h1);
            entries[{h2.label, h1.label}] =
                Residue::normalize(value(h2) + phi.at(h2) * value(h1) - value(h21), n);
        }
    return TwoCocycle(H, n, std::move(entries));
}

namespace detail {

/**
 * One solution of A x = b (mod n), or nullopt. Gcd-pivot elimination to row
 * echelon form followed by depth-first back-substitution (pivots need not be
 * units mod n, so branches can occur).
 */
inline std::optional<std::vector<long long>> solve_linear_mod(
    std::vector<std::vector<long long>> A, std::vector<long long> b, long long n) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (auto& v : A[r]) v = Residue::normalize(v, n);
        b[r] = Residue::normalize(b[r], n);
    }
    auto ext_gcd = [](long long a, long long bb, long long& x, long long& y) {
        long long g = a;
        x = 1;
        y = 0;
        long long x1 = 0, y1 = 1, g1 = bb;
        while (g1 != 0) {
            long long q = g / g1;
            std::swap(g -= q * g1, g1);
            std::swap(x -= q * x1, x1);
            std::swap(y -= q * y1, y1);
        }
        return g;
    };

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        // combine rows so that row `rank` holds the gcd of the column
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (A[r][col] == 0) continue;
            if (A[rank][col] == 0) {
                std::swap(A[rank], A[r]);
                std::swap(b[rank], b[r]);
                continue;
            }
            long long x, y;
            long long g = ext_gcd(A[rank][col], A[r][col], x, y);
            long long a1 = A[rank][col] / g, a2 = A[r][col] / g;
            for (std::size_t c = 0; c < cols; ++c) {
                long long top = Residue::normalize(x * A[rank][c] + y * A[r][c], n);
                long long bot = Residue::normalize(a1 * A[r][c] - a2 * A[rank][c], n);
                A[rank][c] = top;
                A[r][c] = bot;
            }
            long long top = Residue::normalize(x * b[rank] + y * b[r], n);
            long long bot = Residue::normalize(a1 * b[r] - a2 * b[rank], n);
            b[rank] = top;
            b[r] = bot;
        }
        if (A[rank][col] != 0) {
            pivot_col.push_back(col);
            ++rank;
        }
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;

    // back-substitute, branching over the solutions of each pivot congruence
    std::vector<long long> x(cols, -1);
    long long budget = 2'000'000;
    std::function<bool(long long)> assign = [&](long long row) -> bool {
        if (--budget < 0) throw Error("solve_linear_mod: search budget exceeded");
        if (row < 0) return true;
        std::size_t col = pivot_col[static_cast<std::size_t>(row)];
        long long rhs = b[static_cast<std::size_t>(row)];
        for (std::size_t c = col + 1; c < cols; ++c)
            rhs -= A[static_cast<std::size_t>(row)][c] * x[c];
        for (const Residue& sol :
             solve_mod_linear(A[static_cast<std::size_t>(row)][col], Residue(rhs, n))) {
            x[col] = sol.value();
            if (assign(row - 1)) return true;
        }
        x[col] = -1;
        return false;
    };
    // iterate over free-variable assignments lazily: start with all-zero free
    // variables; if that fails, fall back to exhaustive enumeration of free
    // variables when the search space is small
    std::vector<std::size_t> free_cols;
    {
        std::set<std::size_t> pivots(pivot_col.begin(), pivot_col.end());
        for (std::size_t c = 0; c < cols; ++c)
            if (!pivots.count(c)) free_cols.push_back(c);
    }
    std::function<bool(std::size_t)> enumerate_free = [&](std::size_t idx) -> bool {
        if (idx == free_cols.size()) {
            std::vector<long long> saved = x;
            bool ok = assign(static_cast<long long>(rank) - 1);
            if (!ok) x = saved;
            return ok;
        }
        for (long long v = 0; v < n; ++v) {
            x[free_cols[idx]] = v;
            if (enumerate_free(idx + 1)) return true;
        }
        x[free_cols[idx]] = -1;
        return false;
    };
    if (enumerate_free(0)) {
        for (auto& v : x)
            if (v < 0) v = 0;
        return x;
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Finds a 1-cochain c with zeta2 - zeta1 = (delta c), i.e. the two cocycles
 * are cohomologous under the shared action, or nullopt when none exists.
 */
inline std::optional<OneCochain> cocycles_cohomologous(const Groupoid& H,
                                                       const ActionFunctor& phi,
                                                       const TwoCocycle& zeta1,
                                                       const TwoCocycle& zeta2, long long n) {
    // unknowns: one residue per non-identity morphism (identities forced to 0)
    std::vector<std::string> unknowns;
    std::map<std::string, std::size_t> col;
    for (const auto& h : H.morphisms())
        if (!H.is_identity(h)) {
            col[h.label] = unknowns.size();
            unknowns.push_back(h.label);
        }
    std::vector<std::vector<long long>> A;
    std::vector<long long> b;
    for (const auto& h1 : H.morphisms())
        for (const auto& h2 : H.morphisms()) {
            if (h1.dst != h2.src) continue;
            const HMorphism& h21 = H.compose(h2, h1);
            std::vector<long long> row(unknowns.size(), 0);
            auto add = [&](const HMorphism& h, long long coeff) {
                auto it = col.find(h.label);
                if (it != col.end()) row[it->second] += coeff;
            };
            add(h2, 1);
            add(h1, phi.at(h2));
            add(h21, -1);
            A.push_back(std::move(row));
            b.push_back(zeta2.at(h2, h1) - zeta1.at(h2, h1));
        }
    auto solution = detail::solve_linear_mod(std::move(A), std::move(b), n);
    if (!solution) return std::nullopt;
    OneCochain c;
    for (std::size_t i = 0; i < unknowns.size(); ++i) c[unknowns[i]] = (*solution)[i];
    for (const auto& h : H.morphisms())
        if (H.is_identity(h)) c[h.label] = 0;
    return c;
}

/// One isomorphism class of extensions 1 -> Z_n -> G -> Z_m -> 1.
struct ExtensionClass {
    long long group_order = 0;
    bool abelian = false;
    std::optional<InvariantFactors> invariants;     // when abelian
    std::map<long long, long long> order_multiset;  // element order -> count
    long long action_multiplier = 1;                // witness data
    std::vector<long long> cocycle_row;             // witness zeta(1, b), b = 1..m-1
};

/**
 * Enumerates the one-object extensions 1 -> Z_n -> G -> Z_m -> 1 up to the
 * (order, abelian, invariants / element-order multiset) classification.
 *
 * Every action is a unit k with k^m = 1; every normalized cocycle on Z_m is
 * determined by its first row zeta(1, .), which is enumerated exhaustively
 * and extended by the cocycle recurrence.
 */
inline std::vector<ExtensionClass> enumerate_group_extensions(long long n, long long m,
                                                              bool trivial_action_only = false) {
    if (n < 1 || m < 1) throw Error("enumerate_group_extensions: n, m must be positive");
    if (n * m > 4096) throw DeskScaleExceeded("enumerate_group_extensions: n*m > 4096");
    double row_count = 1;
    for (long long i = 1; i < m; ++i) {
        row_count *= static_cast<double>(n);
        if (row_count > 1e7)
            throw DeskScaleExceeded("enumerate_group_extensions: cocycle row space too large");
    }

    std::vector<long long> actions;
    for (long long k = 1; k <= std::max<long long>(1, n - 1); ++k) {
        if (n > 1 && std::gcd(k, n) != 1) continue;
        long long acc = 1 % n;
        for (long long i = 0; i < m; ++i) acc = (acc * k) % n;
        if (acc == 1 % n && (!trivial_action_only || k == 1 % n || n == 1))
            actions.push_back(n == 1 ? 1 : k % n);
        if (n == 1) break;
    }

    std::vector<ExtensionClass> classes;
    auto seen = [&classes](const ExtensionClass& c) {
        for (const auto& k : classes)
            if (k.abelian == c.abelian && k.invariants == c.invariants &&
                k.order_multiset == c.order_multiset)
                return true;
        return false;
    };

    const long long N = n * m;
    std::vector<long long> row(static_cast<std::size_t>(std::max<long long>(0, m - 1)), 0);
    for (long long k : actions) {
        // powers of the action
        std::vector<long long> kpow(static_cast<std::size_t>(m), 1 % n);
        for (long long a = 1; a < m; ++a) kpow[a] = (kpow[a - 1] * k) % n;

        std::function<void(std::size_t)> scan = [&](std::size_t idx) {
            if (idx < row.size()) {
                for (long long v = 0; v < n; ++v) {
                    row[idx] = v;
                    scan(idx + 1);
                }
                return;
            }
            // extend the first row to a full table via the recurrence
            // zeta(a+1, b) = k * zeta(a, b) + zeta(1, a+b) - zeta(1, a)
            std::vector<std::vector<long long>> zeta(
                static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m), 0));
            auto first = [&](long long b) { return b % m == 0 ? 0 : row[static_cast<std::size_t>(b % m - 1)]; };
            for (long long b = 0; b < m; ++b) zeta[1 % m][b] = first(b);
            for (long long a = 1; a + 1 < m; ++a)
                for (long long b = 0; b < m; ++b)
                    zeta[a + 1][b] = Residue::normalize(
                        k * zeta[a][b] + first((a + b) % m) - first(a), n);
            // normalization of the zero row plus the full cocycle identity
            for (long long b = 0; b < m; ++b)
                if (zeta[0][b] != 0) return;
            for (long long a = 0; a < m; ++a)
                for (long long b = 0; b < m; ++b)
                    for (long long c = 0; c < m; ++c) {
                        long long lhs = kpow[a] * zeta[b][c] + zeta[a][(b + c) % m];
                        long long rhs = zeta[a][b] + zeta[(a + b) % m][c];
                        if (Residue::normalize(lhs, n) != Residue::normalize(rhs, n)) return;
                    }
            // the closing relation: zeta(m-1+1, .) must reproduce row zero
            if (m > 1)
                for (long long b = 0; b < m; ++b) {
                    long long wrap = Residue::normalize(
                        k * zeta[m - 1][b] + first((m - 1 + b) % m) - first(m - 1), n);
                    if (wrap != 0) return;
                }

            // the total group on Z_n x Z_m
            auto encode = [&](long long z, long long a) { return z * m + a; };
            auto mul = [&](long long x, long long y) {
                long long z1 = x / m, a1 = x % m, z2 = y / m, a2 = y % m;
                return encode(Residue::normalize(z1 + kpow[a1] * z2 + zeta[a1][a2], n),
                              (a1 + a2) % m);
            };
            std::vector<long long> elems;
            elems.reserve(static_cast<std::size_t>(N));
            for (long long e = 0; e < N; ++e) elems.push_back(e);

            ExtensionClass cls;
            cls.group_order = N;
            cls.abelian = true;
            for (long long x = 0; x < N && cls.abelian; ++x)
                for (long long y = x + 1; y < N; ++y)
                    if (mul(x, y) != mul(y, x)) {
                        cls.abelian = false;
                        break;
                    }
            long long identity = encode(0, 0);
            for (long long x = 0; x < N; ++x) {
                long long ord = 1, acc = x;
                while (acc != identity) {
                    acc = mul(acc, x);
                    ++ord;
                }
                ++cls.order_multiset[ord];
            }
            if (cls.abelian) cls.invariants = invariant_factors(elems, mul);
            cls.action_multiplier = k;
            cls.cocycle_row = row;
            if (!seen(cls)) classes.push_back(std::move(cls));
        };
        scan(0);
    }
    return classes;
}

}  // namespace gex
