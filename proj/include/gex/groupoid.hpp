#pragma once

/**
 * @file groupoid.hpp
 * @brief Finite groupoids with explicit composition tables.
 *
 * Instances are tiny (a dozen objects at most), so identities, inverses and
 * the composition law are stored as literal tables and validated by
 * exhaustive enumeration.
 */

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gex/errors.hpp"

namespace gex {

using ObjectId = std::string;

/// A morphism of the shape groupoid, identified by a label plus endpoints.
struct HMorphism {
    std::string label;
    ObjectId src;
    ObjectId dst;

    bool operator==(const HMorphism&) const = default;
    auto operator<=>(const HMorphism&) const = default;
};

/// Accumulates axiom violations; empty means valid.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string msg) { violations.push_back(std::move(msg)); }
};

class Groupoid {
public:
    Groupoid(std::vector<ObjectId> objects, std::vector<HMorphism> morphisms,
             std::map<ObjectId, std::string> identities,
             std::map<std::pair<std::string, std::string>, std::string> composition,
             std::map<std::string, std::string> inverses)
        : objects_(std::move(objects)),
          morphisms_(std::move(morphisms)),
          identities_(std::move(identities)),
          composition_(std::move(composition)),
          inverses_(std::move(inverses)) {
        for (std::size_t i = 0; i < morphisms_.size(); ++i) {
            if (!index_.emplace(morphisms_[i].label, i).second)
                throw Error("Groupoid: duplicate morphism label " + morphisms_[i].label);
        }
    }

    const std::vector<ObjectId>& objects() const { return objects_; }
    const std::vector<HMorphism>& morphisms() const { return morphisms_; }

    bool has_object(const ObjectId& x) const {
        for (const auto& o : objects_)
            if (o == x) return true;
        return false;
    }

    const HMorphism& by_label(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw Error("Groupoid: unknown morphism " + label);
        return morphisms_[it->second];
    }

    const HMorphism& identity(const ObjectId& x) const {
        auto it = identities_.find(x);
        if (it == identities_.end()) throw Error("Groupoid: no identity at " + x);
        return by_label(it->second);
    }

    bool is_identity(const HMorphism& h) const {
        auto it = identities_.find(h.src);
        return it != identities_.end() && it->second == h.label;
    }

    /// g2 . g1, defined when t(g1) = s(g2).
    const HMorphism& compose(const HMorphism& g2, const HMorphism& g1) const {
        if (g1.dst != g2.src)
            throw IncompatibleComposition("compose: target of " + g1.label +
                                          " is " + g1.dst + " but source of " +
                                          g2.label + " is " + g2.src);
        auto it = composition_.find({g2.label, g1.label});
        if (it == composition_.end())
            throw Error("Groupoid: composition table missing entry (" + g2.label +
                        ", " + g1.label + ")");
        return by_label(it->second);
    }

    const HMorphism& inverse(const HMorphism& h) const {
        auto it = inverses_.find(h.label);
        if (it == inverses_.end()) throw Error("Groupoid: no inverse for " + h.label);
        return by_label(it->second);
    }

    /// Exhaustive axiom check: identities, associativity, inverses.
    ValidationReport validate() const {
        ValidationReport report;
        for (const auto& x : objects_) {
            auto it = identities_.find(x);
            if (it == identities_.end()) {
                report.add("missing identity at object " + x);
                continue;
            }
            const HMorphism& id = by_label(it->second);
            if (id.src != x || id.dst != x)
                report.add("identity at " + x + " has endpoints " + id.src + "->" + id.dst);
        }
        for (const auto& h : morphisms_) {
            if (!has_object(h.src) || !has_object(h.dst))
                report.add("morphism " + h.label + " references unknown object");
            // identity laws
            if (identities_.count(h.src) && identities_.count(h.dst)) {
                try {
                    if (compose(h, identity(h.src)) != h)
                        report.add("identity law fails: " + h.label + " . id_" + h.src);
                    if (compose(identity(h.dst), h) != h)
                        report.add("identity law fails: id_" + h.dst + " . " + h.label);
                } catch (const Error& e) {
                    report.add(e.what());
                }
            }
            // inverse axioms
            auto inv = inverses_.find(h.label);
            if (inv == inverses_.end()) {
                report.add("missing inverse for " + h.label);
            } else {
                try {
                    const HMorphism& hi = by_label(inv->second);
                    if (hi.src != h.dst || hi.dst != h.src) {
                        report.add("inverse of " + h.label + " has wrong endpoints");
                    } else {
                        if (compose(hi, h) != identity(h.src))
                            report.add("inverse law fails: " + inv->second + " . " + h.label);
                        if (compose(h, hi) != identity(h.dst))
                            report.add("inverse law fails: " + h.label + " . " + inv->second);
                    }
                } catch (const Error& e) {
                    report.add(e.what());
                }
            }
        }
        // composition well-defined and associative on all compatible triples
        for (const auto& g1 : morphisms_)
            for (const auto& g2 : morphisms_) {
                if (g1.dst != g2.src) continue;
                const HMorphism* c12 = nullptr;
                try {
                    c12 = &compose(g2, g1);
                } catch (const Error& e) {
                    report.add(e.what());
                    continue;
                }
                if (c12->src != g1.src || c12->dst != g2.dst)
                    report.add("composite " + g2.label + " . " + g1.label + " has wrong endpoints");
                for (const auto& g3 : morphisms_) {
                    if (g2.dst != g3.src) continue;
                    try {
                        if (compose(g3, *c12) != compose(compose(g3, g2), g1))
                            report.add("associativity fails on (" + g3.label + ", " +
                                       g2.label + ", " + g1.label + ")");
                    } catch (const Error& e) {
                        report.add(e.what());
                    }
                }
            }
        return report;
    }

    /// The groupoid with exactly one morphism per ordered pair of objects.
    static Groupoid pair_groupoid(const std::vector<ObjectId>& objects) {
        if (objects.empty()) throw Error("pair_groupoid: no objects");
        std::set<ObjectId> seen;
        for (const auto& x : objects)
            if (!seen.insert(x).second) throw DuplicateObject("pair_groupoid: duplicate object " + x);

        auto label = [](const ObjectId& a, const ObjectId& b) {
            return a == b ? "id:" + a : "h:" + a + "->" + b;
        };
        std::vector<HMorphism> morphisms;
        std::map<ObjectId, std::string> identities;
        for (const auto& a : objects)
            for (const auto& b : objects) morphisms.push_back({label(a, b), a, b});
        for (const auto& a : objects) identities[a] = label(a, a);

        std::map<std::pair<std::string, std::string>, std::string> composition;
        std::map<std::string, std::string> inverses;
        for (const auto& a : objects)
            for (const auto& b : objects) {
                inverses[label(a, b)] = label(b, a);
                for (const auto& c : objects)
                    composition[{label(b, c), label(a, b)}] = label(a, c);
            }
        return Groupoid(objects, std::move(morphisms), std::move(identities),
                        std::move(composition), std::move(inverses));
    }

    /// One object whose endomorphisms form the cyclic group Z_m.
    static Groupoid cyclic(const ObjectId& object, long long m) {
        if (m < 1) throw Error("cyclic: order must be positive");
        auto label = [&](long long k) {
            return k == 0 ? "id:" + object : "g:" + object + ":" + std::to_string(k);
        };
        std::vector<HMorphism> morphisms;
        for (long long k = 0; k < m; ++k) morphisms.push_back({label(k), object, object});
        std::map<ObjectId, std::string> identities{{object, label(0)}};
        std::map<std::pair<std::string, std::string>, std::string> composition;
        std::map<std::string, std::string> inverses;
        for (long long a = 0; a < m; ++a) {
            inverses[label(a)] = label((m - a) % m);
            for (long long b = 0; b < m; ++b)
                composition[{label(a), label(b)}] = label((a + b) % m);
        }
        return Groupoid({object}, std::move(morphisms), std::move(identities),
                        std::move(composition), std::move(inverses));
    }

    /// Mutation hook for tests: returns a copy with one inverse entry removed.
    Groupoid without_inverse(const std::string& label) const {
        auto inverses = inverses_;
        inverses.erase(label);
        return Groupoid(objects_, morphisms_, identities_, composition_, inverses);
    }

private:
    std::vector<ObjectId> objects_;
    std::vector<HMorphism> morphisms_;
    std::map<ObjectId, std::string> identities_;
    std::map<std::pair<std::string, std::string>, std::string> composition_;
    std::map<std::string, std::string> inverses_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace gex
