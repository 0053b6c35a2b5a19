#pragma once

/**
 * @file action.hpp
 * @brief Representable-functor actions of the extension category on chords:
 *        the chord <-> morphism bijection, partial evaluation, the unique
 *        interval between two chords, and orbits.
 */

#include <set>
#include <vector>

#include "gex/chord.hpp"
#include "gex/errors.hpp"
#include "gex/extension.hpp"

namespace gex {

enum class Variance { covariant, contravariant };

/**
 * Chords of type X identified with a hom-set at the base object:
 *   contravariant: n_X <-> (z_base^n, h_{X base})   (right composition)
 *   covariant:     n_X <-> (z_X^n,   h_{base X})    (left composition)
 */
class RepresentableAction {
public:
    RepresentableAction(const ExtensionCategory& ext, const SetClassRegistry& reg,
                        ObjectId base_object, Variance variance)
        : ext_(&ext), reg_(&reg), base_(std::move(base_object)), variance_(variance) {
        if (!ext.shape().has_object(base_))
            throw UnknownType("RepresentableAction: base object " + base_ + " not in extension");
        for (const auto& obj : ext.objects()) reg.at(obj);  // every object must be a set class
    }

    const ExtensionCategory& extension() const { return *ext_; }
    const SetClassRegistry& registry() const { return *reg_; }
    const ObjectId& base_object() const { return base_; }
    Variance variance() const { return variance_; }

    GMorphism chord_to_morphism(const Chord& c) const {
        if (!ext_->shape().has_object(c.type))
            throw UnknownType("chord_to_morphism: type " + c.type + " not in extension");
        const Groupoid& H = ext_->shape();
        bool contra = variance_ == Variance::contravariant;
        const ObjectId& src = contra ? c.type : base_;
        const ObjectId& dst = contra ? base_ : c.type;
        if (src == dst) return ext_->make(c.root.value(), H.identity(src));
        // the representable identification needs singleton hom-sets off the diagonal
        const HMorphism* found = nullptr;
        for (const auto& h : H.morphisms()) {
            if (h.src != src || h.dst != dst) continue;
            if (found)
                throw NotRepresented("chord_to_morphism: Hom(" + src + ", " + dst +
                                     ") is not a singleton");
            found = &h;
        }
        if (!found)
            throw NotRepresented("chord_to_morphism: Hom(" + src + ", " + dst + ") is empty");
        return ext_->make(c.root.value(), *found);
    }

    Chord morphism_to_chord(const GMorphism& g) const {
        if (variance_ == Variance::contravariant) {
            if (g.h.dst != base_)
                throw NotRepresented("morphism_to_chord: " + to_string(g) + " has codomain " +
                                     g.h.dst + ", not " + base_);
            return Chord{g.z, g.h.src};
        }
        if (g.h.src != base_)
            throw NotRepresented("morphism_to_chord: " + to_string(g) + " has domain " +
                                 g.h.src + ", not " + base_);
        return Chord{g.z, g.h.dst};
    }

    /// Domain of definition: the chord types g may act on.
    bool applicable(const GMorphism& g, const Chord& c) const {
        return variance_ == Variance::contravariant ? g.h.dst == c.type : g.h.src == c.type;
    }

    Chord act(const GMorphism& g, const Chord& c) const {
        if (!applicable(g, c))
            throw PartialityViolation("act: " + to_string(g) + " is not defined on " +
                                      to_string(c));
        if (variance_ == Variance::contravariant)
            return morphism_to_chord(ext_->compose(chord_to_morphism(c), g));
        return morphism_to_chord(ext_->compose(g, chord_to_morphism(c)));
    }

    /// The unique g with act(g, c1) = c2 (each hom-set is a torsor).
    GMorphism interval(const Chord& c1, const Chord& c2) const {
        GMorphism m1 = chord_to_morphism(c1);
        GMorphism m2 = chord_to_morphism(c2);
        if (variance_ == Variance::contravariant)
            return ext_->compose(ext_->inverse(m1), m2);
        return ext_->compose(m2, ext_->inverse(m1));
    }

    /// Smallest chord set containing c and closed under every generator,
    /// skipping chords outside a generator's domain.
    std::set<Chord> orbit(const std::vector<GMorphism>& gens, const Chord& c) const {
        std::set<Chord> seen{c};
        std::vector<Chord> frontier{c};
        while (!frontier.empty()) {
            std::vector<Chord> next;
            for (const Chord& x : frontier)
                for (const GMorphism& g : gens) {
                    if (!applicable(g, x)) continue;
                    Chord y = act(g, x);
                    if (seen.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        return seen;
    }

private:
    const ExtensionCategory* ext_;
    const SetClassRegistry* reg_;
    ObjectId base_;
    Variance variance_;
};

}  // namespace gex
