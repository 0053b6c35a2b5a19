#pragma once

/**
 * @file chord.hpp
 * @brief Set classes with roots, chords n_t, ordered voicings, affine voicing
 *        maps, and root-law extraction.
 */

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gex/errors.hpp"
#include "gex/groupoid.hpp"
#include "gex/modular.hpp"

namespace gex {

/// A chord type: interval offsets from the root, e.g. M = [0,4,7].
struct SetClass {
    ObjectId name;
    std::vector<long long> offsets;  // strictly increasing, offsets[0] == 0
};

/// The chord n_t: root n of type t.
struct Chord {
    Residue root;
    ObjectId type;

    bool operator==(const Chord&) const = default;
    auto operator<=>(const Chord&) const = default;
};

using Voicing = std::vector<Residue>;

/// Registered set classes, in declaration order (the order fixes the
/// canonical chord indexing used by permutation representations).
class SetClassRegistry {
public:
    explicit SetClassRegistry(long long modulus) : n_(modulus) {
        if (modulus < 1) throw Error("SetClassRegistry: modulus must be positive");
    }

    void add(const SetClass& sc) {
        if (sc.name.empty()) throw Error("SetClassRegistry: empty type name");
        if (index_.count(sc.name)) throw DuplicateObject("SetClassRegistry: duplicate " + sc.name);
        if (sc.offsets.empty() || sc.offsets.front() != 0)
            throw Error("SetClass " + sc.name + ": offsets must start at 0");
        std::set<long long> distinct;
        for (long long o : sc.offsets) {
            if (o < 0 || o >= n_) throw Error("SetClass " + sc.name + ": offset out of range");
            if (!distinct.insert(o).second)
                throw Error("SetClass " + sc.name + ": repeated offset");
        }
        for (std::size_t i = 1; i < sc.offsets.size(); ++i)
            if (sc.offsets[i] <= sc.offsets[i - 1])
                throw Error("SetClass " + sc.name + ": offsets must increase");
        if (!classes_.empty() && sc.offsets.size() != classes_.front().offsets.size())
            throw Error("SetClass " + sc.name + ": cardinality differs from registered classes");
        index_[sc.name] = classes_.size();
        classes_.push_back(sc);
    }

    long long modulus() const { return n_; }
    const std::vector<SetClass>& classes() const { return classes_; }

    const SetClass& at(const ObjectId& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownType("unknown set class " + name);
        return classes_[it->second];
    }

    std::size_t index_of(const ObjectId& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownType("unknown set class " + name);
        return it->second;
    }

    Chord chord(long long root, const ObjectId& type) const {
        at(type);
        return Chord{Residue(root, n_), type};
    }

    std::size_t cardinality() const {
        return classes_.empty() ? 0 : classes_.front().offsets.size();
    }

private:
    long long n_;
    std::vector<SetClass> classes_;
    std::map<ObjectId, std::size_t> index_;
};

/// The pitch-class set { root + offset } of a chord.
inline std::set<Residue> realize(const SetClassRegistry& reg, const Chord& c) {
    std::set<Residue> pcs;
    for (long long o : reg.at(c.type).offsets) pcs.insert(c.root + Residue(o, reg.modulus()));
    return pcs;
}

/// All chords whose realization equals the given pitch-class set.
inline std::set<Chord> classify(const SetClassRegistry& reg, const std::set<Residue>& pcs) {
    std::set<Chord> out;
    for (const auto& sc : reg.classes())
        for (long long r = 0; r < reg.modulus(); ++r) {
            Chord c{Residue(r, reg.modulus()), sc.name};
            if (realize(reg, c) == pcs) out.insert(c);
        }
    return out;
}

/// Root-position ordering (root + offsets[0], root + offsets[1], ...).
inline Voicing canonical_voicing(const SetClassRegistry& reg, const Chord& c) {
    Voicing v;
    for (long long o : reg.at(c.type).offsets) v.push_back(c.root + Residue(o, reg.modulus()));
    return v;
}

/// output_i = sum_j matrix[i][j] * input_j + constant[i], componentwise mod n.
struct AffineTripleMap {
    std::vector<std::vector<long long>> matrix;  // k x k
    std::vector<long long> constant;             // k

    std::size_t arity() const { return constant.size(); }
};

inline Voicing apply_affine(const AffineTripleMap& map, const Voicing& v, long long n) {
    if (map.matrix.size() != map.constant.size())
        throw DimensionMismatch("apply_affine: ragged map");
    if (v.size() != map.arity())
        throw DimensionMismatch("apply_affine: voicing length " + std::to_string(v.size()) +
                                " vs map arity " + std::to_string(map.arity()));
    Voicing out;
    for (std::size_t i = 0; i < map.arity(); ++i) {
        if (map.matrix[i].size() != map.arity())
            throw DimensionMismatch("apply_affine: ragged matrix row");
        long long acc = map.constant[i];
        for (std::size_t j = 0; j < map.arity(); ++j) acc += map.matrix[i][j] * v[j].value();
        out.push_back(Residue(acc, n));
    }
    return out;
}

/// True iff the map commutes with global transposition: every row sums to 1.
inline bool check_equivariance(const AffineTripleMap& map, long long n) {
    for (const auto& row : map.matrix) {
        long long sum = 0;
        for (long long e : row) sum += e;
        if (Residue::normalize(sum, n) != Residue::normalize(1, n)) return false;
    }
    return true;
}

/// Per-type outcome of pushing a voicing map down to roots.
struct RootLaw {
    struct Entry {
        ObjectId target;
        Residue shift;
        bool operator==(const Entry&) const = default;
    };
    std::map<ObjectId, Entry> rows;        // source type -> (target type, shift)
    std::vector<ObjectId> unclassifiable;  // image matched zero or several chords
    bool consistent = false;
};

/**
 * Applies the map to the canonical voicing of 0_t for each registered type
 * and classifies the image. Equivariance guarantees the law transfers to
 * every root; non-equivariant maps are rejected.
 */
inline RootLaw root_law_of(const SetClassRegistry& reg, const AffineTripleMap& map) {
    const long long n = reg.modulus();
    if (!check_equivariance(map, n))
        throw NotEquivariant("root_law_of: a matrix row does not sum to 1 mod " +
                             std::to_string(n));
    RootLaw law;
    law.consistent = true;
    for (const auto& sc : reg.classes()) {
        Chord zero{Residue(0, n), sc.name};
        Voicing image = apply_affine(map, canonical_voicing(reg, zero), n);
        std::set<Residue> pcs(image.begin(), image.end());
        std::set<Chord> hits = classify(reg, pcs);
        if (hits.size() == 1) {
            const Chord& c = *hits.begin();
            law.rows[sc.name] = {c.type, c.root};
        } else {
            law.unclassifiable.push_back(sc.name);
            law.consistent = false;
        }
    }
    return law;
}

/// Chord text form: decimal root then type name, e.g. "0M", "10beta".
inline std::string to_string(const Chord& c) {
    return std::to_string(c.root.value()) + c.type;
}

inline Chord parse_chord(const SetClassRegistry& reg, const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == 0 || i == text.size())
        throw ParseError("parse_chord: expected <root digits><type name>, got \"" + text + "\"");
    long long root = std::stoll(text.substr(0, i));
    ObjectId type = text.substr(i);
    reg.at(type);
    if (root < 0 || root >= reg.modulus())
        throw ParseError("parse_chord: root " + std::to_string(root) + " out of [0, " +
                         std::to_string(reg.modulus()) + ")");
    return Chord{Residue(root, reg.modulus()), type};
}

}  // namespace gex
