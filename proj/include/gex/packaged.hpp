#pragma once

/**
 * @file packaged.hpp
 * @brief Packaged operators: object-indexed bundles of extension morphisms,
 *        their permutation representations on the full chord set, BFS group
 *        closure, and structure certificates (cyclic, dihedral, wreath).
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gex/action.hpp"
#include "gex/chord.hpp"
#include "gex/errors.hpp"
#include "gex/extension.hpp"
#include "gex/modular.hpp"

namespace gex {

/// One extension morphism per object; sources and targets each cover the
/// object set exactly once, so the bundle induces an object permutation.
class PackagedOperator {
public:
    PackagedOperator() = default;

    const std::vector<GMorphism>& morphisms() const { return morphisms_; }

    const GMorphism& from_source(const ObjectId& x) const {
        auto it = by_src_.find(x);
        if (it == by_src_.end()) throw Error("PackagedOperator: no morphism from " + x);
        return morphisms_[it->second];
    }

    const GMorphism& to_target(const ObjectId& x) const {
        auto it = by_tgt_.find(x);
        if (it == by_tgt_.end()) throw Error("PackagedOperator: no morphism into " + x);
        return morphisms_[it->second];
    }

    bool operator==(const PackagedOperator& rhs) const { return morphisms_ == rhs.morphisms_; }

    friend PackagedOperator package(const ExtensionCategory& E, std::vector<GMorphism> morphisms);

private:
    std::vector<GMorphism> morphisms_;  // sorted for stable equality
    std::map<ObjectId, std::size_t> by_src_;
    std::map<ObjectId, std::size_t> by_tgt_;
};

/// Validates a bundle: every object exactly once as source and as target.
inline PackagedOperator package(const ExtensionCategory& E, std::vector<GMorphism> morphisms) {
    PackagedOperator op;
    std::sort(morphisms.begin(), morphisms.end());
    op.morphisms_ = std::move(morphisms);
    for (std::size_t i = 0; i < op.morphisms_.size(); ++i) {
        const auto& g = op.morphisms_[i];
        if (!op.by_src_.emplace(g.h.src, i).second)
            throw NotAPackaging("package: object " + g.h.src + " appears twice as a source");
        if (!op.by_tgt_.emplace(g.h.dst, i).second)
            throw NotAPackaging("package: object " + g.h.dst + " appears twice as a target");
    }
    for (const auto& x : E.objects()) {
        if (!op.by_src_.count(x)) throw NotAPackaging("package: object " + x + " has no source morphism");
        if (!op.by_tgt_.count(x)) throw NotAPackaging("package: object " + x + " has no target morphism");
    }
    if (op.morphisms_.size() != E.objects().size())
        throw NotAPackaging("package: bundle size differs from object count");
    return op;
}

inline PackagedOperator identity_packaged(const ExtensionCategory& E) {
    std::vector<GMorphism> ms;
    for (const auto& x : E.objects()) ms.push_back(E.identity(x));
    return package(E, std::move(ms));
}

/// O1 . O2: compose every compatible pair, O2 first.
inline PackagedOperator compose_packaged(const ExtensionCategory& E, const PackagedOperator& o1,
                                         const PackagedOperator& o2) {
    std::vector<GMorphism> ms;
    for (const auto& g2 : o2.morphisms()) ms.push_back(E.compose(o1.from_source(g2.h.dst), g2));
    return package(E, std::move(ms));
}

inline PackagedOperator inverse_packaged(const ExtensionCategory& E, const PackagedOperator& o) {
    std::vector<GMorphism> ms;
    for (const auto& g : o.morphisms()) ms.push_back(E.inverse(g));
    return package(E, std::move(ms));
}

/// Root-law sugar: per type, a target type and a root shift.
struct RootLawOperator {
    struct Arrow {
        ObjectId target;
        long long shift = 0;
    };
    std::map<ObjectId, Arrow> arrows;
};

/// Compiles a root law to the bundle whose morphisms send 0_X to shift_X'.
inline PackagedOperator compile_root_law(const RepresentableAction& A, const RootLawOperator& law) {
    const ExtensionCategory& E = A.extension();
    std::set<ObjectId> targets;
    for (const auto& [src, arrow] : law.arrows)
        if (!targets.insert(arrow.target).second)
            throw NotAPackaging("compile_root_law: target " + arrow.target + " repeated");
    std::vector<GMorphism> ms;
    for (const auto& [src, arrow] : law.arrows) {
        Chord from = A.registry().chord(0, src);
        Chord to = A.registry().chord(arrow.shift, arrow.target);
        ms.push_back(A.interval(from, to));
    }
    return package(E, std::move(ms));
}

/// A permutation of the m*n chords over the canonical type-major, root-
/// ascending point ordering.
struct PermutationRep {
    std::vector<std::uint16_t> img;

    std::size_t degree() const { return img.size(); }
    bool operator==(const PermutationRep&) const = default;
    auto operator<=>(const PermutationRep&) const = default;

    static PermutationRep identity(std::size_t degree) {
        PermutationRep p;
        p.img.resize(degree);
        for (std::size_t i = 0; i < degree; ++i) p.img[i] = static_cast<std::uint16_t>(i);
        return p;
    }

    /// (a after b): apply b first, then a.
    static PermutationRep after(const PermutationRep& a, const PermutationRep& b) {
        PermutationRep p;
        p.img.resize(a.img.size());
        for (std::size_t i = 0; i < a.img.size(); ++i) p.img[i] = a.img[b.img[i]];
        return p;
    }

    PermutationRep inverse() const {
        PermutationRep p;
        p.img.resize(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) p.img[img[i]] = static_cast<std::uint16_t>(i);
        return p;
    }

    long long order() const {
        long long ord = 1;
        std::vector<bool> seen(img.size(), false);
        for (std::size_t i = 0; i < img.size(); ++i) {
            if (seen[i]) continue;
            long long len = 0;
            for (std::size_t j = i; !seen[j]; j = img[j]) {
                seen[j] = true;
                ++len;
            }
            ord = std::lcm(ord, len);
        }
        return ord;
    }
};

/// Canonical chord <-> point translation for an action's registry.
class ChordIndexing {
public:
    explicit ChordIndexing(const SetClassRegistry& reg) : reg_(&reg) {}

    std::size_t points() const {
        return reg_->classes().size() * static_cast<std::size_t>(reg_->modulus());
    }
    std::size_t index(const Chord& c) const {
        return reg_->index_of(c.type) * static_cast<std::size_t>(reg_->modulus()) +
               static_cast<std::size_t>(c.root.value());
    }
    Chord chord(std::size_t point) const {
        const long long n = reg_->modulus();
        return Chord{Residue(static_cast<long long>(point) % n, n),
                     reg_->classes()[point / static_cast<std::size_t>(n)].name};
    }

private:
    const SetClassRegistry* reg_;
};

/// The total permutation c -> act(bundle element for type(c), c).
inline PermutationRep permutation_rep(const RepresentableAction& A, const PackagedOperator& O) {
    ChordIndexing ix(A.registry());
    PermutationRep p;
    p.img.resize(ix.points());
    for (std::size_t pt = 0; pt < ix.points(); ++pt) {
        Chord c = ix.chord(pt);
        const GMorphism& g = A.variance() == Variance::contravariant ? O.to_target(c.type)
                                                                     : O.from_source(c.type);
        p.img[pt] = static_cast<std::uint16_t>(ix.index(A.act(g, c)));
    }
    return p;
}

/// BFS closure of a generator set, with shortest generator words
/// (deterministic: generators in given order, breadth-first).
struct GeneratedGroup {
    std::vector<PermutationRep> generators;
    std::vector<PermutationRep> elements;       // BFS discovery order
    std::vector<std::vector<int>> words;        // per element, generator indices
                                                // in application order

    std::size_t order() const { return elements.size(); }

    bool contains(const PermutationRep& p) const {
        return std::find(elements.begin(), elements.end(), p) != elements.end();
    }
};

inline GeneratedGroup generate_group(std::vector<PermutationRep> generators,
                                     std::size_t budget = 1'000'000) {
    if (generators.empty()) throw Error("generate_group: no generators");
    const std::size_t degree = generators.front().degree();
    for (const auto& g : generators)
        if (g.degree() != degree) throw Error("generate_group: mixed degrees");

    GeneratedGroup G;
    G.generators = std::move(generators);
    std::map<PermutationRep, std::size_t> index;
    PermutationRep id = PermutationRep::identity(degree);
    G.elements.push_back(id);
    G.words.push_back({});
    index[id] = 0;
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t at = frontier.front();
        frontier.pop_front();
        for (std::size_t gi = 0; gi < G.generators.size(); ++gi) {
            PermutationRep next = PermutationRep::after(G.generators[gi], G.elements[at]);
            if (index.count(next)) continue;
            if (G.elements.size() >= budget)
                throw ClosureBudgetExceeded("generate_group: closure exceeds " +
                                            std::to_string(budget) + " elements");
            index[next] = G.elements.size();
            std::vector<int> word = G.words[at];
            word.push_back(static_cast<int>(gi));
            G.elements.push_back(std::move(next));
            G.words.push_back(std::move(word));
            frontier.push_back(index.size() - 1);
        }
    }
    return G;
}

inline GeneratedGroup generate_group(const RepresentableAction& A,
                                     const std::vector<PackagedOperator>& gens,
                                     std::size_t budget = 1'000'000) {
    std::vector<PermutationRep> perms;
    for (const auto& O : gens) perms.push_back(permutation_rep(A, O));
    return generate_group(std::move(perms), budget);
}

/// Structure report for a generated permutation group over m blocks of n roots.
struct GroupAnalysis {
    std::size_t order = 0;
    bool abelian = false;
    bool cyclic = false;
    std::optional<InvariantFactors> invariants;  // when abelian
    std::map<long long, long long> order_histogram;
    bool type_blocks_preserved = false;
    std::size_t kernel_order = 0;
    bool kernel_abelian = false;
    std::optional<InvariantFactors> kernel_invariants;
    std::size_t quotient_order = 0;
    bool quotient_abelian = false;
};

namespace detail {

/// Block image on the m type-blocks, or nullopt when blocks are not preserved.
inline std::optional<std::vector<int>> block_image(const PermutationRep& p, long long n,
                                                   long long m) {
    std::vector<int> image(static_cast<std::size_t>(m), -1);
    for (long long t = 0; t < m; ++t) {
        long long target = p.img[static_cast<std::size_t>(t * n)] / n;
        for (long long r = 0; r < n; ++r)
            if (p.img[static_cast<std::size_t>(t * n + r)] / n != target) return std::nullopt;
        image[static_cast<std::size_t>(t)] = static_cast<int>(target);
    }
    return image;
}

}  // namespace detail

inline GroupAnalysis analyze_group(const GeneratedGroup& G, long long n, long long m) {
    GroupAnalysis a;
    a.order = G.order();
    a.abelian = true;
    for (const auto& g1 : G.generators)
        for (const auto& g2 : G.generators)
            if (PermutationRep::after(g1, g2) != PermutationRep::after(g2, g1)) a.abelian = false;
    long long max_order = 1;
    for (const auto& e : G.elements) {
        long long ord = e.order();
        ++a.order_histogram[ord];
        max_order = std::max(max_order, ord);
    }
    a.cyclic = static_cast<std::size_t>(max_order) == a.order;
    if (a.abelian)
        a.invariants = invariant_factors(G.elements, [](const PermutationRep& x,
                                                        const PermutationRep& y) {
            return PermutationRep::after(x, y);
        });

    a.type_blocks_preserved = true;
    std::vector<PermutationRep> kernel;
    std::set<std::vector<int>> images;
    for (const auto& e : G.elements) {
        auto image = detail::block_image(e, n, m);
        if (!image) {
            a.type_blocks_preserved = false;
            break;
        }
        images.insert(*image);
        bool trivial = true;
        for (long long t = 0; t < m; ++t)
            if ((*image)[static_cast<std::size_t>(t)] != t) trivial = false;
        if (trivial) kernel.push_back(e);
    }
    if (a.type_blocks_preserved) {
        a.kernel_order = kernel.size();
        a.quotient_order = images.size();
        try {
            a.kernel_invariants = invariant_factors(
                kernel, [](const PermutationRep& x, const PermutationRep& y) {
                    return PermutationRep::after(x, y);
                });
            a.kernel_abelian = true;
        } catch (const NotAbelian&) {
            a.kernel_abelian = false;
        }
        a.quotient_abelian = true;
        std::vector<std::vector<int>> qs(images.begin(), images.end());
        auto qmul = [](const std::vector<int>& x, const std::vector<int>& y) {
            std::vector<int> r(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[y[i]];
            return r;
        };
        for (const auto& x : qs)
            for (const auto& y : qs)
                if (qmul(x, y) != qmul(y, x)) a.quotient_abelian = false;
    }
    return a;
}

/// Outcome of the wreath-product certification G ~ Z_n wr S_m.
struct WreathCertificate {
    bool ok = false;
    std::string failed_clause;  // first failing clause when not ok
    std::size_t kernel_order = 0;
    std::optional<InvariantFactors> kernel_invariants;
    std::size_t block_image_order = 0;
    std::size_t complement_order = 0;
    bool complement_from_candidates = false;
};

/**
 * Certifies the wreath structure clause by clause: order n^m * m!, preserved
 * type blocks, abelian kernel with invariant factors (n, ..., n), full block
 * image, and an S_m complement. Complement candidates (typically zero-shift
 * packaged inversions) are tried first; a bounded search over involution
 * pairs is the fallback.
 */
inline WreathCertificate wreath_certificate(const GeneratedGroup& G, long long n, long long m,
                                            const std::vector<PermutationRep>& complement_candidates = {}) {
    WreathCertificate cert;
    long long expected = 1;
    for (long long i = 0; i < m; ++i) expected *= n;
    long long mfact = 1;
    for (long long i = 2; i <= m; ++i) mfact *= i;
    expected *= mfact;
    if (static_cast<long long>(G.order()) != expected) {
        cert.failed_clause = "order " + std::to_string(G.order()) + " != n^m * m! = " +
                             std::to_string(expected);
        return cert;
    }

    GroupAnalysis a = analyze_group(G, n, m);
    if (!a.type_blocks_preserved) {
        cert.failed_clause = "type partition is not a preserved block system";
        return cert;
    }
    cert.kernel_order = a.kernel_order;
    cert.kernel_invariants = a.kernel_invariants;
    cert.block_image_order = a.quotient_order;
    if (!a.kernel_abelian) {
        cert.failed_clause = "block-action kernel is not abelian";
        return cert;
    }
    InvariantFactors want;
    if (n > 1) want.factors.assign(static_cast<std::size_t>(m), n);
    if (!a.kernel_invariants || !(*a.kernel_invariants == want)) {
        cert.failed_clause = "kernel invariant factors are not (n, ..., n)";
        return cert;
    }
    if (static_cast<long long>(a.quotient_order) != mfact) {
        cert.failed_clause = "block image has order " + std::to_string(a.quotient_order) +
                             " != m! = " + std::to_string(mfact);
        return cert;
    }

    // kernel membership test for intersection checks
    std::set<PermutationRep> kernel;
    for (const auto& e : G.elements)
        if (auto im = detail::block_image(e, n, m)) {
            bool trivial = true;
            for (long long t = 0; t < m; ++t)
                if ((*im)[static_cast<std::size_t>(t)] != t) trivial = false;
            if (trivial) kernel.insert(e);
        }
    const PermutationRep id = PermutationRep::identity(G.elements.front().degree());

    auto try_complement = [&](const std::vector<PermutationRep>& gens) -> bool {
        if (gens.empty()) return false;
        GeneratedGroup K;
        try {
            K = generate_group(gens, static_cast<std::size_t>(2 * mfact + 2));
        } catch (const ClosureBudgetExceeded&) {
            return false;
        }
        if (static_cast<long long>(K.order()) != mfact) return false;
        for (const auto& e : K.elements) {
            if (e == id) continue;
            if (kernel.count(e)) return false;  // N intersect K must be trivial
            if (!G.contains(e)) return false;
        }
        cert.complement_order = K.order();
        return true;
    };

    if (try_complement(complement_candidates)) {
        cert.complement_from_candidates = true;
        cert.ok = true;
        return cert;
    }

    // fallback: bounded search among involutions whose block image is a
    // transposition (for m = 1 the kernel itself is the whole group)
    if (m == 1) {
        cert.complement_order = 1;
        cert.ok = true;
        return cert;
    }
    std::vector<PermutationRep> involutions;
    for (const auto& e : G.elements) {
        if (e.order() != 2) continue;
        auto im = detail::block_image(e, n, m);
        if (!im) continue;
        int moved = 0;
        for (long long t = 0; t < m; ++t)
            if ((*im)[static_cast<std::size_t>(t)] != t) ++moved;
        if (moved == 2) involutions.push_back(e);
    }
    if (m == 2) {
        for (const auto& x : involutions)
            if (try_complement({x})) {
                cert.ok = true;
                return cert;
            }
    } else {
        std::size_t attempts = 0;
        for (const auto& x : involutions)
            for (const auto& y : involutions) {
                if (++attempts > 500'000) break;
                if (try_complement({x, y})) {
                    cert.ok = true;
                    return cert;
                }
            }
    }
    cert.failed_clause = "no S_m complement found";
    return cert;
}

/// |G| = 2k with a cyclic subgroup of order k inverted by an involution.
struct DihedralCertificate {
    bool ok = false;
    long long k = 0;
};

inline DihedralCertificate dihedral_certificate(const GeneratedGroup& G) {
    DihedralCertificate cert;
    if (G.order() % 2 != 0) return cert;
    const long long k = static_cast<long long>(G.order()) / 2;
    const PermutationRep id = PermutationRep::identity(G.elements.front().degree());
    for (const auto& t : G.elements) {
        if (t.order() != k && k != 1) continue;
        // C = <t> of order k
        std::set<PermutationRep> C;
        PermutationRep acc = id;
        for (long long i = 0; i < k; ++i) {
            C.insert(acc);
            acc = PermutationRep::after(acc, t);
        }
        PermutationRep tinv = t.inverse();
        for (const auto& r : G.elements) {
            if (C.count(r)) continue;
            if (PermutationRep::after(r, r) != id) continue;
            if (PermutationRep::after(r, PermutationRep::after(t, r)) == tinv) {
                cert.ok = true;
                cert.k = k;
                return cert;
            }
        }
        if (k == 1) break;
    }
    return cert;
}

}  // namespace gex
