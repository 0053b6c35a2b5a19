#include <catch2/catch_amalgamated.hpp>

#include "gex/affine_expr.hpp"
#include "gex/chord.hpp"

using namespace gex;

namespace {

SetClassRegistry preset_registry() {
    SetClassRegistry reg(12);
    reg.add({"M", {0, 4, 7}});
    reg.add({"alpha", {0, 2, 5}});
    reg.add({"beta", {0, 4, 5}});
    return reg;
}

std::set<Residue> pcs(std::initializer_list<long long> values) {
    std::set<Residue> out;
    for (long long v : values) out.insert(Residue(v, 12));
    return out;
}

}  // namespace

TEST_CASE("registry validates set classes") {
    SetClassRegistry reg(12);
    reg.add({"M", {0, 4, 7}});
    CHECK_THROWS_AS(reg.add({"M", {0, 4, 7}}), DuplicateObject);
    CHECK_THROWS_AS(reg.add({"bad", {1, 4, 7}}), Error);    // must start at 0
    CHECK_THROWS_AS(reg.add({"bad", {0, 7, 4}}), Error);    // must increase
    CHECK_THROWS_AS(reg.add({"bad", {0, 4, 13}}), Error);   // out of range
    CHECK_THROWS_AS(reg.add({"bad", {0, 4}}), Error);       // cardinality mismatch
    CHECK_THROWS_AS(reg.at("unknown"), UnknownType);
    CHECK(reg.cardinality() == 3);
}

TEST_CASE("realize and classify are mutually inverse") {
    SetClassRegistry reg = preset_registry();
    CHECK(realize(reg, reg.chord(0, "M")) == pcs({0, 4, 7}));
    CHECK(realize(reg, reg.chord(0, "beta")) == pcs({0, 4, 5}));
    CHECK(realize(reg, reg.chord(3, "alpha")) == pcs({3, 5, 8}));

    CHECK(classify(reg, pcs({0, 4, 7})) == std::set<Chord>{reg.chord(0, "M")});
    CHECK(classify(reg, pcs({9, 11, 2})) == std::set<Chord>{reg.chord(9, "alpha")});
    CHECK(classify(reg, pcs({0, 1, 2})).empty());

    for (const auto& sc : reg.classes())
        for (long long r = 0; r < 12; ++r) {
            Chord c = reg.chord(r, sc.name);
            CHECK(classify(reg, realize(reg, c)).count(c) == 1);
        }
}

TEST_CASE("canonical_voicing lists pitch classes in offset order") {
    SetClassRegistry reg = preset_registry();
    CHECK(canonical_voicing(reg, reg.chord(0, "M")) ==
          Voicing{Residue(0, 12), Residue(4, 12), Residue(7, 12)});
    CHECK(canonical_voicing(reg, reg.chord(5, "alpha")) ==
          Voicing{Residue(5, 12), Residue(7, 12), Residue(10, 12)});
    CHECK(canonical_voicing(reg, reg.chord(0, "beta")) ==
          Voicing{Residue(0, 12), Residue(4, 12), Residue(5, 12)});
}

TEST_CASE("apply_affine evaluates voicing formulas") {
    AffineTripleMap vl = parse_affine_map("z+2,x-1,y-2");
    Voicing m0{Residue(0, 12), Residue(4, 12), Residue(7, 12)};
    CHECK(apply_affine(vl, m0, 12) == Voicing{Residue(9, 12), Residue(11, 12), Residue(2, 12)});

    AffineTripleMap i_malpha = parse_affine_map("x,2x-3-y,2x-3-z");
    CHECK(apply_affine(i_malpha, m0, 12) ==
          Voicing{Residue(0, 12), Residue(5, 12), Residue(2, 12)});

    AffineTripleMap id = parse_affine_map("x,y,z");
    CHECK(apply_affine(id, m0, 12) == m0);

    CHECK_THROWS_AS(apply_affine(vl, Voicing{Residue(0, 12)}, 12), DimensionMismatch);
}

TEST_CASE("check_equivariance tests row sums") {
    CHECK(check_equivariance(parse_affine_map("z+2,x-1,y-2"), 12));
    CHECK(check_equivariance(parse_affine_map("2y-1-z,y,2y-1-x"), 12));
    CHECK_FALSE(check_equivariance(parse_affine_map("2x,2y,2z"), 12));
}

TEST_CASE("root_law_of extracts the per-type root laws") {
    SetClassRegistry reg = preset_registry();

    RootLaw vl = root_law_of(reg, parse_affine_map("z+2,x-1,y-2"));
    CHECK(vl.consistent);
    CHECK(vl.rows.at("M") == RootLaw::Entry{"alpha", Residue(9, 12)});
    CHECK(vl.rows.at("alpha") == RootLaw::Entry{"beta", Residue(7, 12)});
    CHECK(vl.rows.at("beta") == RootLaw::Entry{"M", Residue(7, 12)});

    RootLaw i_mbeta = root_law_of(reg, parse_affine_map("2z+4-y,2z+4-x,z"));
    CHECK(i_mbeta.rows.at("M") == RootLaw::Entry{"beta", Residue(2, 12)});
    CHECK(i_mbeta.rows.at("beta") == RootLaw::Entry{"M", Residue(10, 12)});
    CHECK(i_mbeta.rows.at("alpha") == RootLaw::Entry{"alpha", Residue(0, 12)});
    // the fixed-alpha row, brute-forced over every alpha voicing
    AffineTripleMap map = parse_affine_map("2z+4-y,2z+4-x,z");
    for (long long r = 0; r < 12; ++r) {
        Voicing v = canonical_voicing(reg, reg.chord(r, "alpha"));
        Voicing image = apply_affine(map, v, 12);
        CHECK(std::set<Residue>(image.begin(), image.end()) ==
              std::set<Residue>(v.begin(), v.end()));
    }

    // the alternate voice-leading formula lands on shift 11, not 1
    RootLaw vlp = root_law_of(reg, parse_affine_map("z+4,x+1,y"));
    CHECK(vlp.rows.at("M") == RootLaw::Entry{"alpha", Residue(11, 12)});
    CHECK(vlp.rows.at("alpha") == RootLaw::Entry{"beta", Residue(9, 12)});
    CHECK(vlp.rows.at("beta") == RootLaw::Entry{"M", Residue(9, 12)});

    CHECK_THROWS_AS(root_law_of(reg, parse_affine_map("2x,2y,2z")), NotEquivariant);
}

TEST_CASE("root laws transfer to every root by equivariance") {
    SetClassRegistry reg = preset_registry();
    for (const std::string& literal :
         {"z+2,x-1,y-2", "z+4,x+1,y", "x,2x-3-y,2x-3-z", "2z+4-y,2z+4-x,z", "2y-1-z,y,2y-1-x"}) {
        AffineTripleMap map = parse_affine_map(literal);
        RootLaw law = root_law_of(reg, map);
        for (const auto& sc : reg.classes())
            for (long long r = 0; r < 12; ++r) {
                Voicing image = apply_affine(map, canonical_voicing(reg, reg.chord(r, sc.name)), 12);
                std::set<Chord> hits =
                    classify(reg, std::set<Residue>(image.begin(), image.end()));
                const auto& entry = law.rows.at(sc.name);
                CHECK(hits == std::set<Chord>{reg.chord(r + entry.shift.value(), entry.target)});
            }
    }
}

TEST_CASE("the three inversion formulas are involutions on their swapped types") {
    SetClassRegistry reg = preset_registry();
    struct Case {
        std::string literal;
        std::vector<std::string> types;
    };
    for (const auto& c : std::vector<Case>{{"x,2x-3-y,2x-3-z", {"M", "alpha"}},
                                           {"2z+4-y,2z+4-x,z", {"M", "beta"}},
                                           {"2y-1-z,y,2y-1-x", {"alpha", "beta"}}}) {
        AffineTripleMap map = parse_affine_map(c.literal);
        for (const auto& type : c.types)
            for (long long r = 0; r < 12; ++r) {
                Voicing v = canonical_voicing(reg, reg.chord(r, type));
                CHECK(apply_affine(map, apply_affine(map, v, 12), 12) == v);
            }
    }
}

TEST_CASE("the voice-leading formula cubes to transposition by -1") {
    SetClassRegistry reg = preset_registry();
    AffineTripleMap vl = parse_affine_map("z+2,x-1,y-2");
    for (const auto& sc : reg.classes())
        for (long long r = 0; r < 12; ++r) {
            Chord c = reg.chord(r, sc.name);
            Voicing v = canonical_voicing(reg, c);
            for (int i = 0; i < 3; ++i) v = apply_affine(vl, v, 12);
            std::set<Chord> hits = classify(reg, std::set<Residue>(v.begin(), v.end()));
            CHECK(hits == std::set<Chord>{reg.chord(r - 1, sc.name)});
        }
}

TEST_CASE("chord text grammar") {
    SetClassRegistry reg = preset_registry();
    CHECK(to_string(reg.chord(0, "M")) == "0M");
    CHECK(to_string(reg.chord(10, "beta")) == "10beta");
    CHECK(parse_chord(reg, "0M") == reg.chord(0, "M"));
    CHECK(parse_chord(reg, "10beta") == reg.chord(10, "beta"));
    CHECK_THROWS_AS(parse_chord(reg, "M"), ParseError);
    CHECK_THROWS_AS(parse_chord(reg, "12M"), ParseError);
    CHECK_THROWS_AS(parse_chord(reg, "5"), ParseError);
    CHECK_THROWS_AS(parse_chord(reg, "3gamma"), UnknownType);
    for (const auto& sc : reg.classes())
        for (long long r = 0; r < 12; ++r) {
            Chord c = reg.chord(r, sc.name);
            CHECK(parse_chord(reg, to_string(c)) == c);
        }
}

TEST_CASE("affine map literals parse term by term") {
    AffineTripleMap m = parse_affine_map("2x - 3 - y, x, 11z + 1");
    CHECK(m.matrix == std::vector<std::vector<long long>>{{2, -1, 0}, {1, 0, 0}, {0, 0, 11}});
    CHECK(m.constant == std::vector<long long>{-3, 0, 1});
    CHECK_THROWS_AS(parse_affine_map("x,y"), ParseError);
    CHECK_THROWS_AS(parse_affine_map("x,y,w"), ParseError);
    CHECK_THROWS_AS(parse_affine_map("x,y,"), ParseError);
}
