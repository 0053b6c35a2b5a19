#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "gex/groupoid.hpp"

using namespace gex;

TEST_CASE("pair_groupoid has one morphism per ordered pair") {
    CHECK(Groupoid::pair_groupoid({"M", "m"}).morphisms().size() == 4);
    Groupoid H = Groupoid::pair_groupoid({"M", "alpha", "beta"});
    CHECK(H.morphisms().size() == 9);
    CHECK(H.validate().ok());
    CHECK_THROWS_AS(Groupoid::pair_groupoid({"M", "M"}), DuplicateObject);
    CHECK_THROWS_AS(Groupoid::pair_groupoid({}), Error);
}

TEST_CASE("pair-groupoid composition collapses paths") {
    Groupoid H = Groupoid::pair_groupoid({"M", "alpha", "beta"});
    // from beta through M and back: h_{beta M} . h_{M beta} = id_M
    CHECK(H.compose(H.by_label("h:beta->M"), H.by_label("h:M->beta")) == H.identity("M"));
    CHECK(H.compose(H.identity("M"), H.identity("M")) == H.identity("M"));
    CHECK(H.compose(H.by_label("h:M->beta"), H.by_label("h:alpha->M")) ==
          H.by_label("h:alpha->beta"));
}

TEST_CASE("compose is partial exactly on incompatible pairs") {
    Groupoid H = Groupoid::pair_groupoid({"M", "alpha", "beta"});
    for (const auto& g1 : H.morphisms())
        for (const auto& g2 : H.morphisms()) {
            if (g1.dst == g2.src) {
                const HMorphism& c = H.compose(g2, g1);
                CHECK(c.src == g1.src);
                CHECK(c.dst == g2.dst);
            } else {
                CHECK_THROWS_AS(H.compose(g2, g1), IncompatibleComposition);
            }
        }
}

TEST_CASE("validate reports mutations") {
    Groupoid H = Groupoid::pair_groupoid({"M", "alpha", "beta"});
    Groupoid broken = H.without_inverse("h:M->alpha");
    ValidationReport report = broken.validate();
    REQUIRE_FALSE(report.ok());
    bool cites_inverse = false;
    for (const auto& v : report.violations)
        if (v.find("inverse") != std::string::npos && v.find("h:M->alpha") != std::string::npos)
            cites_inverse = true;
    CHECK(cites_inverse);
}

TEST_CASE("single-object groupoids validate") {
    Groupoid one = Groupoid::pair_groupoid({"X"});
    CHECK(one.morphisms().size() == 1);
    CHECK(one.validate().ok());
    Groupoid z12 = Groupoid::cyclic("X", 12);
    CHECK(z12.morphisms().size() == 12);
    CHECK(z12.validate().ok());
    CHECK(z12.compose(z12.by_label("g:X:5"), z12.by_label("g:X:9")) == z12.by_label("g:X:2"));
    CHECK(z12.inverse(z12.by_label("g:X:5")) == z12.by_label("g:X:7"));
}

TEST_CASE("hom-set sizes are homogeneous in the pair groupoid") {
    Groupoid H = Groupoid::pair_groupoid({"M", "alpha", "beta"});
    std::map<std::pair<ObjectId, ObjectId>, int> hom;
    for (const auto& h : H.morphisms()) ++hom[{h.src, h.dst}];
    CHECK(hom.size() == 9);
    for (const auto& [pair, count] : hom) CHECK(count == 1);
}

TEST_CASE("inverses in the pair groupoid swap endpoints") {
    Groupoid H = Groupoid::pair_groupoid({"M", "alpha", "beta"});
    for (const auto& h : H.morphisms()) {
        const HMorphism& hi = H.inverse(h);
        CHECK(hi.src == h.dst);
        CHECK(hi.dst == h.src);
        CHECK(H.compose(hi, h) == H.identity(h.src));
        CHECK(H.compose(h, hi) == H.identity(h.dst));
    }
}
