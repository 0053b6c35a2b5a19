#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "gex/modular.hpp"
#include "oracles.hpp"

using namespace gex;

TEST_CASE("Residue normalizes into [0, n)") {
    CHECK(Residue(-3, 12).value() == 9);
    CHECK(Residue(25, 12).value() == 1);
    CHECK(Residue(-24, 12).value() == 0);
    CHECK(Residue(5, 12) + Residue(9, 12) == Residue(2, 12));
    CHECK(Residue(5, 12) - Residue(9, 12) == Residue(8, 12));
    CHECK(-Residue(3, 12) == Residue(9, 12));
    CHECK_THROWS_AS(Residue(0, 0), Error);
    CHECK_THROWS_AS(Residue(1, 12) + Residue(1, 7), Error);
}

TEST_CASE("AutMultiplier requires a unit and acts multiplicatively") {
    CHECK_THROWS_AS(AutMultiplier(2, 12), Error);
    CHECK_THROWS_AS(AutMultiplier(0, 12), Error);
    AutMultiplier five(5, 12);
    CHECK(five.apply(Residue(2, 12)) == Residue(10, 12));
    CHECK(five.compose(five).multiplier() == 1);
    CHECK(five.inverse() == five);
    CHECK(AutMultiplier(7, 12).compose(AutMultiplier(5, 12)).multiplier() == 11);
}

TEST_CASE("unit_group matches brute-force gcd counting") {
    std::set<long long> mults;
    for (const auto& u : unit_group(12)) mults.insert(u.multiplier());
    CHECK(mults == std::set<long long>{1, 5, 7, 11});
    for (const auto& u : unit_group(12)) CHECK(u.inverse() == u);  // all self-inverse

    std::set<long long> two;
    for (const auto& u : unit_group(2)) two.insert(u.multiplier());
    CHECK(two == std::set<long long>{1});

    std::set<long long> nine;
    for (const auto& u : unit_group(9)) nine.insert(u.multiplier());
    std::set<long long> nine_expected;  // independent brute force
    for (long long k = 1; k < 9; ++k)
        if (std::gcd(k, 9) == 1) nine_expected.insert(k);
    CHECK(nine == nine_expected);
    CHECK(nine_expected == std::set<long long>{1, 2, 4, 5, 7, 8});

    SECTION("totient count and bijectivity for n <= 64") {
        for (long long n = 1; n <= 64; ++n) {
            auto units = unit_group(n);
            CHECK(static_cast<long long>(units.size()) == oracle::brute_totient(n));
            for (const auto& u : units) {
                std::set<long long> image;
                for (long long x = 0; x < n; ++x)
                    image.insert(u.apply(Residue(x, n)).value());
                CHECK(static_cast<long long>(image.size()) == n);
            }
        }
    }
}

TEST_CASE("solve_mod_linear enumerates every solution") {
    auto values = [](const std::set<Residue>& s) {
        std::set<long long> out;
        for (const auto& r : s) out.insert(r.value());
        return out;
    };
    CHECK(values(solve_mod_linear(5, Residue(2, 12))) == std::set<long long>{10});
    CHECK(values(solve_mod_linear(1, Residue(7, 12))) == std::set<long long>{7});
    CHECK(solve_mod_linear(2, Residue(1, 12)).empty());

    SECTION("agrees with an exhaustive scan") {
        for (long long a = 0; a < 12; ++a)
            for (long long r = 0; r < 12; ++r) {
                std::set<long long> expected;
                for (long long x = 0; x < 12; ++x)
                    if ((a * x) % 12 == r) expected.insert(x);
                CHECK(values(solve_mod_linear(a, Residue(r, 12))) == expected);
            }
    }

    SECTION("unit coefficients give exactly one solution") {
        for (const auto& u : unit_group(12))
            for (long long r = 0; r < 12; ++r)
                CHECK(solve_mod_linear(u.multiplier(), Residue(r, 12)).size() == 1);
    }
}

namespace {

// composition oracle for Z_{d1} x ... x Z_{dr} on mixed-radix encoded elements
struct ProductGroup {
    std::vector<long long> ds;

    long long size() const {
        long long total = 1;
        for (long long d : ds) total *= d;
        return total;
    }
    long long op(long long x, long long y) const {
        long long out = 0, place = 1;
        for (long long d : ds) {
            out += ((x % d + y % d) % d) * place;
            x /= d;
            y /= d;
            place *= d;
        }
        return out;
    }
    std::vector<long long> elements() const {
        std::vector<long long> e(static_cast<std::size_t>(size()));
        std::iota(e.begin(), e.end(), 0);
        return e;
    }
};

}  // namespace

TEST_CASE("invariant_factors recovers canonical divisor chains") {
    auto factors_of = [](std::vector<long long> ds) {
        ProductGroup g{std::move(ds)};
        return invariant_factors(g.elements(), [&g](long long x, long long y) {
            return g.op(x, y);
        });
    };
    CHECK(factors_of({36}).factors == std::vector<long long>{36});
    CHECK(factors_of({3, 12}).factors == std::vector<long long>{3, 12});
    CHECK(factors_of({12, 3}).factors == std::vector<long long>{3, 12});
    CHECK(factors_of({4, 2}).factors == std::vector<long long>{2, 4});
    CHECK(factors_of({6, 4}).factors == std::vector<long long>{2, 12});
    CHECK(factors_of({3, 4}).factors == std::vector<long long>{12});
    CHECK(factors_of({12, 12}).factors == std::vector<long long>{12, 12});
    CHECK(factors_of({1}).factors.empty());

    SECTION("output order multiset matches the abstract product, orders <= 2000") {
        std::vector<std::vector<long long>> cases{{36},   {3, 12},  {2, 2},       {8, 2, 4},
                                                 {5, 25}, {6, 6, 6}, {12, 12, 12}, {7, 2}};
        for (const auto& ds : cases) {
            ProductGroup g{ds};
            auto result = invariant_factors(g.elements(), [&g](long long x, long long y) {
                return g.op(x, y);
            });
            // divisibility chain
            for (std::size_t i = 1; i < result.factors.size(); ++i)
                CHECK(result.factors[i] % result.factors[i - 1] == 0);
            CHECK(result.group_order() == g.size());
            CHECK(oracle::product_order_multiset(result.factors) ==
                  oracle::product_order_multiset(ds));
        }
    }

    SECTION("rejects nonabelian input") {
        oracle::Table s3 = oracle::symmetric3_table();
        std::vector<int> elems{0, 1, 2, 3, 4, 5};
        CHECK_THROWS_AS(invariant_factors(elems, [&s3](int x, int y) { return s3.mul[x][y]; }),
                        NotAbelian);
    }
}

TEST_CASE("is_abelian distinguishes commutative tables") {
    ProductGroup z6{{6}};
    CHECK(is_abelian(z6.elements(), [&z6](long long x, long long y) { return z6.op(x, y); }));
    oracle::Table s3 = oracle::symmetric3_table();
    std::vector<int> elems{0, 1, 2, 3, 4, 5};
    CHECK_FALSE(is_abelian(elems, [&s3](int x, int y) { return s3.mul[x][y]; }));
}
