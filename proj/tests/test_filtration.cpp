#include <catch2/catch_amalgamated.hpp>

#include "specseq/filtration.hpp"
#include "specseq/generators.hpp"

using namespace specseq;

TEST_CASE("totalize dot") {
    Rationals q;
    auto ft = totalize(make_dot(q, 0, 0));
    CHECK(ft.width() == 0);
    CHECK(ft.total_dim(0) == 1);
    CHECK(ft.total_dim(1) == 0);
    CHECK(ft.differential(0).is_zero());
}

TEST_CASE("totalize square") {
    Rationals q;
    auto ft = totalize(make_square(q, 0, 0));
    CHECK(ft.width() == 2);
    CHECK(ft.total_dim(0) == 1);
    CHECK(ft.total_dim(1) == 2);
    CHECK(ft.total_dim(2) == 1);

    REQUIRE(ft.blocks(1).size() == 2);
    CHECK(ft.blocks(1)[0].p == 0);
    CHECK(ft.blocks(1)[1].p == 1);

    CHECK(ft.differential(0) == Matrix<Rationals>(q, {{1}, {1}}));
    CHECK(ft.differential(1) == Matrix<Rationals>(q, {{-1, 1}}));
    CHECK((ft.differential(1) * ft.differential(0)).is_zero());
    CHECK(rank(ft.differential(1)) == 1);
}

TEST_CASE("totalize hz") {
    Rationals q;
    auto ft = totalize(make_zigzag(q, ZigzagShape::HZ, 0, 0));
    CHECK(ft.width() == 1);
    CHECK(ft.total_dim(0) == 1);
    CHECK(ft.total_dim(1) == 1);
    CHECK(ft.differential(0) == Matrix<Rationals>(q, {{1}}));
}

TEST_CASE("block components recover the differentials") {
    PrimeField f5(5);
    auto recipe = Recipe::mixed();
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto c = random_complex(f5, recipe, s);
        auto ft = totalize(c);
        for (const auto& [k, d] : c.support()) {
            CHECK(ft.d1_block(k.first, k.second) == c.d1(k.first, k.second));
            CHECK(ft.d2_block(k.first, k.second) == c.d2(k.first, k.second));
        }
    }
}

TEST_CASE("filtration tails") {
    Rationals q;
    auto ft = totalize(make_square(q, 0, 0));
    CHECK(ft.filtration(0, 1) == Subspace<Rationals>::full(q, 2));
    CHECK(ft.filtration(-3, 1) == Subspace<Rationals>::full(q, 2));
    auto f1 = ft.filtration(1, 1);
    CHECK(f1.dim() == 1);
    CHECK(member(f1, {q.zero(), q.one()}));
    CHECK(!member(f1, {q.one(), q.zero()}));
    CHECK(ft.filtration(2, 1).dim() == 0);
    CHECK(ft.filtration(2, 2).dim() == 0);
    CHECK(ft.filtration(1, 2).dim() == 1);
}

TEST_CASE("d preserves the filtration") {
    PrimeField f3(3);
    auto recipe = Recipe::mixed();
    for (std::uint64_t s = 0; s < 25; ++s) {
        auto ft = totalize(random_complex(f3, recipe, s));
        for (int k = 0; k <= ft.width(); ++k) {
            auto d = ft.differential(k);
            CHECK((ft.differential(k + 1) * d).is_zero());
            for (int p = 0; p <= k + 1; ++p) {
                auto img = image(d * ft.filtration(p, k).basis());
                CHECK(contains(ft.filtration(p, k + 1), img));
            }
        }
    }
}

TEST_CASE("z_space on hz") {
    Rationals q;
    auto ft = totalize(make_zigzag(q, ZigzagShape::HZ, 0, 0));
    CHECK(z_space(ft, 0, 0, 1) == Subspace<Rationals>::full(q, 1));
    CHECK(z_space(ft, 0, 0, 2).dim() == 0);
    CHECK(z_space(ft, 0, 0, PageR::infinity()).dim() == 0);
}

TEST_CASE("z_space convention cases") {
    PrimeField f2(2);
    auto recipe = Recipe::mixed();
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto ft = totalize(random_complex(f2, recipe, s));
        for (int k = 0; k <= ft.width(); ++k)
            for (int p = 0; p <= k; ++p) {
                CHECK(z_space(ft, p, k - p, -1) == ft.filtration(p, k));
                CHECK(z_space(ft, p, k - p, 0) == ft.filtration(p, k));
            }
    }
}

TEST_CASE("b_space on square and dot") {
    Rationals q;
    auto ft = totalize(make_square(q, 0, 0));
    CHECK(b_space(ft, 1, 1, 1).dim() == 1);
    CHECK(b_space(ft, 1, 1, 0).dim() == 1);
    CHECK(b_space(ft, 1, 1, -1).dim() == 0);

    auto dot = totalize(make_dot(q, 0, 0));
    for (int r = -1; r <= 2; ++r)
        CHECK(b_space(dot, 0, 0, r).dim() == 0);
    CHECK(b_space(dot, 0, 0, PageR::infinity()).dim() == 0);
}

TEST_CASE("inclusion chains hold on random complexes") {
    PrimeField f3(3);
    Rationals q;
    auto recipe = Recipe::mixed();
    for (std::uint64_t s = 0; s < 12; ++s) {
        auto run = [&](const auto& c) {
            auto ft = totalize(c);
            ZBTable tbl(ft);
            const int cutoff = ft.width() + 1;
            for (int k = 0; k <= ft.width(); ++k)
                for (int p = 0; p <= k; ++p) {
                    const int qq = k - p;
                    auto zinf = tbl.z(p, qq, PageR::infinity());
                    auto binf = tbl.b(p, qq, PageR::infinity());
                    CHECK(contains(zinf, binf));
                    for (int r = -1; r <= cutoff; ++r) {
                        CHECK(contains(tbl.z(p, qq, r), tbl.z(p, qq, r + 1)));
                        CHECK(contains(tbl.b(p, qq, r + 1), tbl.b(p, qq, r)));
                        CHECK(contains(tbl.z(p, qq, r), zinf));
                        CHECK(contains(binf, tbl.b(p, qq, r)));
                        CHECK(contains(tbl.z(p, qq, r), tbl.z(p + 1, qq - 1, r - 1)));
                        CHECK(contains(tbl.z(p, qq, r), tbl.b(p + 1, qq - 1, r + 1)));
                        auto lhs = image(ft.differential(k - 1) *
                                         tbl.z(p - r, qq + r - 1, r).basis());
                        CHECK(lhs == tbl.b(p, qq, r));
                    }
                }
        };
        run(random_complex(f3, recipe, s));
        run(random_complex(q, recipe, s));
    }
}

TEST_CASE("z stabilizes past q+1") {
    PrimeField f5(5);
    auto recipe = Recipe::mixed();
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto ft = totalize(random_complex(f5, recipe, s));
        ZBTable tbl(ft);
        for (int k = 0; k <= ft.width(); ++k)
            for (int p = 0; p <= k; ++p) {
                const int qq = k - p;
                auto zinf = tbl.z(p, qq, PageR::infinity());
                CHECK(tbl.z(p, qq, qq + 2) == zinf);
                CHECK(tbl.z(p, qq, qq + 5) == zinf);
            }
    }
}

TEST_CASE("zb table memoization returns identical values") {
    Rationals q;
    auto ft = totalize(make_square(q, 0, 0));
    ZBTable tbl(ft);
    const auto& a = tbl.z(0, 0, 1);
    const auto& b = tbl.z(0, 0, 1);
    CHECK(&a == &b);
    CHECK(a == z_space(ft, 0, 0, 1));
}
