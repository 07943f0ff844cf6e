#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "markov/abelian.hpp"
#include "markov/coefficients.hpp"
#include "markov/int_matrix.hpp"
#include "markov/smith.hpp"
#include "support/oracles.hpp"

using namespace markov;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int lo, int hi,
                        double density = 0.7) {
    IntMatrix m(rows, cols);
    std::uniform_int_distribution<int> val(lo, hi);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (keep(rng) < density) m.set(r, c, val(rng));
    return m;
}

bool is_diagonal(const IntMatrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            if (c != r && v != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("smith form of a frozen 2x2 example") {
    IntMatrix a{{2, 4}, {6, 8}};
    SmithResult s = smith_normal_form(a);
    REQUIRE(s.rank == 2);
    REQUIRE(s.divisors == std::vector<BigInt>{2, 4});
    REQUIRE(s.U * a * s.V == s.D);
    REQUIRE(abs(determinant(s.U)) == 1);
    REQUIRE(abs(determinant(s.V)) == 1);
}

TEST_CASE("smith form merges coprime diagonal entries") {
    IntMatrix a{{2, 0}, {0, 3}};
    SmithResult s = smith_normal_form(a);
    REQUIRE(s.divisors == std::vector<BigInt>{1, 6});
}

TEST_CASE("smith form of a triangle boundary matrix") {
    // Edges 01, 02, 12 as columns over vertices 0, 1, 2.
    IntMatrix d1{{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}};
    SmithResult s = smith_normal_form(d1);
    REQUIRE(s.rank == 2);
    REQUIRE(s.divisors == std::vector<BigInt>{1, 1});
}

TEST_CASE("smith form properties on random matrices") {
    std::mt19937_64 rng(20260817);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        IntMatrix a = random_matrix(rng, rows, cols, -9, 9);
        SmithResult s = smith_normal_form(a);
        CAPTURE(trial, a.to_string());
        REQUIRE(s.U * a * s.V == s.D);
        REQUIRE(is_diagonal(s.D));
        REQUIRE(abs(determinant(s.U)) == 1);
        REQUIRE(abs(determinant(s.V)) == 1);
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
            REQUIRE(s.divisors[i] > 0);
            REQUIRE(s.divisors[i + 1] % s.divisors[i] == 0);
        }
        REQUIRE(s.rank == oracles::rational_rank(a));
    }
}

TEST_CASE("integer rank against rational elimination") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix a = random_matrix(rng, 2 + static_cast<int>(rng() % 7),
                                    2 + static_cast<int>(rng() % 7), -4, 4, 0.5);
        REQUIRE(integer_rank(a) == oracles::rational_rank(a));
    }
}

TEST_CASE("kernel lattice basis spans the kernel primitively") {
    IntMatrix a{{1, 2, 3}};
    IntMatrix k = kernel_lattice_basis(a);
    REQUIRE(k.cols() == 2);
    REQUIRE((a * k).is_zero());
    // Primitive: the basis extends to a basis of Z^3.
    SmithResult s = smith_normal_form(k);
    REQUIRE(s.divisors == std::vector<BigInt>{1, 1});

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix m = random_matrix(rng, 1 + static_cast<int>(rng() % 4),
                                    1 + static_cast<int>(rng() % 5), -5, 5, 0.6);
        IntMatrix ker = kernel_lattice_basis(m);
        REQUIRE((m * ker).is_zero());
        REQUIRE(ker.cols() == m.cols() - integer_rank(m));
        if (ker.cols() > 0) {
            SmithResult ks = smith_normal_form(ker);
            for (const BigInt& d : ks.divisors) REQUIRE(d == 1);
        }
    }
}

TEST_CASE("integer linear solve") {
    IntMatrix a{{2, 0}, {0, 3}};
    auto x = solve_integer(a, {4, 9});
    REQUIRE(x.has_value());
    REQUIRE(a.apply(*x) == std::vector<BigInt>{4, 9});
    REQUIRE_FALSE(solve_integer(a, {1, 0}).has_value());

    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix m = random_matrix(rng, 2 + static_cast<int>(rng() % 4),
                                    2 + static_cast<int>(rng() % 4), -5, 5, 0.7);
        std::vector<BigInt> x0(m.cols());
        for (auto& v : x0) v = static_cast<int>(rng() % 11) - 5;
        std::vector<BigInt> b = m.apply(x0);
        auto sol = solve_integer(m, b);
        REQUIRE(sol.has_value());
        REQUIRE(m.apply(*sol) == b);
    }
}

TEST_CASE("determinant by fraction free elimination") {
    REQUIRE(determinant(IntMatrix{{1, 2}, {3, 4}}) == -2);
    REQUIRE(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
    REQUIRE(determinant(IntMatrix::identity(5)) == 1);
    IntMatrix swapped{{0, 1}, {1, 0}};
    REQUIRE(determinant(swapped) == -1);
}

TEST_CASE("rank over prime fields") {
    IntMatrix a{{2, 0}, {0, 3}};
    REQUIRE(rank_mod_p(a, 2) == 1);
    REQUIRE(rank_mod_p(a, 3) == 1);
    REQUIRE(rank_mod_p(a, 5) == 2);

    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m = random_matrix(rng, 1 + static_cast<int>(rng() % 8),
                                    1 + static_cast<int>(rng() % 8), -10, 10, 0.6);
        for (long long p : {2, 3, 5, 7}) {
            CAPTURE(trial, p, m.to_string());
            REQUIRE(rank_mod_p(m, p) == oracles::mod_p_rank(m, p));
            REQUIRE(rank_mod_p(m, p) <= rank_over_q(m));
        }
    }
}

TEST_CASE("coefficient spec parsing and printing") {
    auto round_trip = [](const std::string& s) {
        auto c = CoefficientSpec::parse(s);
        REQUIRE(c.has_value());
        REQUIRE(c->to_string() == s);
    };
    round_trip("Z");
    round_trip("Q");
    round_trip("F2");
    round_trip("F97");
    round_trip("Zloc3");
    round_trip("Zinv2,5");
    round_trip("Pinf2");
    REQUIRE_FALSE(CoefficientSpec::parse("F4").has_value());
    REQUIRE_FALSE(CoefficientSpec::parse("Zloc6").has_value());
    REQUIRE_FALSE(CoefficientSpec::parse("").has_value());
    REQUIRE_FALSE(CoefficientSpec::parse("Zinv").has_value());
    REQUIRE(CoefficientSpec::parse("Zinv5,2,3,2") == CoefficientSpec::Zinv({2, 3, 5}));
}

TEST_CASE("divisibility inside localizations") {
    auto Z = CoefficientSpec::Z();
    auto Q = CoefficientSpec::Q();
    auto Zl2 = CoefficientSpec::Zloc(2);
    auto Zl3 = CoefficientSpec::Zloc(3);
    auto Zi2 = CoefficientSpec::Zinv({2});

    REQUIRE(divisible_in_ring(4, 2, Z));
    REQUIRE_FALSE(divisible_in_ring(2, 4, Z));
    REQUIRE(divisible_in_ring(2, 4, Zl3));   // 1/2 is a unit at 3
    REQUIRE_FALSE(divisible_in_ring(2, 4, Zl2));
    REQUIRE(divisible_in_ring(2, 4, Zi2));
    REQUIRE(divisible_in_ring(3, 6, Zl3));   // 3/6 = 1/2 and 2 is a unit at 3
    REQUIRE_FALSE(divisible_in_ring(3, 6, Zl2));
    REQUIRE(divisible_in_ring(5, 7, Q));
    REQUIRE(divisible_in_ring(0, 0, Z));
    REQUIRE_FALSE(divisible_in_ring(1, 0, Q));
}

TEST_CASE("image containment over the coefficient family") {
    IntMatrix b(2, 1), a(2, 1);
    b.set(0, 0, 2);
    a.set(0, 0, 1);
    REQUIRE_FALSE(image_contained(a, b, CoefficientSpec::Z()));
    REQUIRE(image_contained(a, b, CoefficientSpec::Q()));
    REQUIRE(image_contained(a, b, CoefficientSpec::Zloc(3)));
    REQUIRE_FALSE(image_contained(a, b, CoefficientSpec::Zloc(2)));
    REQUIRE(image_contained(a, b, CoefficientSpec::Zinv({2})));
    REQUIRE(image_contained(a, b, CoefficientSpec::Fp(5)));
    REQUIRE_FALSE(image_contained(a, b, CoefficientSpec::Fp(2)));

    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix base = random_matrix(rng, 3, 2 + static_cast<int>(rng() % 3), -4, 4);
        // A genuine combination of the columns must always be contained.
        IntMatrix comb(3, 1);
        std::vector<BigInt> x(base.cols());
        for (auto& v : x) v = static_cast<int>(rng() % 7) - 3;
        comb.set_column(0, base.apply(x));
        for (auto R : {CoefficientSpec::Z(), CoefficientSpec::Q(), CoefficientSpec::Zloc(2),
                       CoefficientSpec::Zinv({3}), CoefficientSpec::Fp(5)})
            REQUIRE(image_contained(comb, base, R));
    }
}

TEST_CASE("surjectivity after tensoring") {
    IntMatrix a{{2, 0}, {0, 3}};
    REQUIRE_FALSE(surjective_over_ring(a, CoefficientSpec::Z()));
    REQUIRE(surjective_over_ring(a, CoefficientSpec::Q()));
    REQUIRE(surjective_over_ring(a, CoefficientSpec::Fp(5)));
    REQUIRE_FALSE(surjective_over_ring(a, CoefficientSpec::Fp(2)));
    REQUIRE(surjective_over_ring(a, CoefficientSpec::Zloc(7)));
    REQUIRE_FALSE(surjective_over_ring(a, CoefficientSpec::Zloc(3)));
    REQUIRE(surjective_over_ring(a, CoefficientSpec::Zinv({2, 3})));

    IntMatrix p5{{5}};
    REQUIRE_FALSE(surjective_over_ring(p5, CoefficientSpec::Zloc(5)));
    REQUIRE(surjective_over_ring(p5, CoefficientSpec::Zinv({5})));
}

TEST_CASE("factorization") {
    using P = std::vector<std::pair<BigInt, int>>;
    REQUIRE(factorize(360) == P{{2, 3}, {3, 2}, {5, 1}});
    REQUIRE(factorize(97) == P{{97, 1}});
    REQUIRE(factorize(1) == P{});
    REQUIRE(factorize(-12) == P{{2, 2}, {3, 1}});
    REQUIRE(factorize(BigInt(1000003) * 1000033) == P{{1000003, 1}, {1000033, 1}});
}

TEST_CASE("abelian group normal forms") {
    FGAbelianGroup g = FGAbelianGroup::from_divisors(1, {2, 4, 0});
    REQUIRE(g.free_rank == 2);
    REQUIRE(g.primary == std::vector<std::pair<BigInt, int>>{{2, 1}, {2, 2}});
    REQUIRE(g.to_string() == "Z^2 + Z/2 + Z/4");
    REQUIRE(g.p_exponents(2) == std::vector<int>{1, 2});
    REQUIRE(g.p_exponents(3).empty());

    FGAbelianGroup loc = g.localize(CoefficientSpec::Zinv({2}));
    REQUIRE(loc.free_rank == 2);
    REQUIRE(loc.primary.empty());
    REQUIRE(g.localize(CoefficientSpec::Q()).to_string() == "Z^2");
    REQUIRE(g.localize(CoefficientSpec::Zloc(2)) == g);
}

TEST_CASE("presented group analysis") {
    // Z^3 modulo (2e0, 6e1): Z/2 + Z/6 + Z.
    IntMatrix rel(3, 2);
    rel.set(0, 0, 2);
    rel.set(1, 1, 6);
    PresentedGroup g(3, rel);
    GroupStructure st = analyze_presentation(g);
    REQUIRE(st.cyclic_orders == std::vector<BigInt>{2, 6});
    REQUIRE(st.free_rank == 1);
    REQUIRE(st.to_normal * st.normal_reps == IntMatrix::identity(3));

    REQUIRE(element_order(st, {1, 0, 0}) == 2);
    REQUIRE(element_order(st, {0, 1, 0}) == 6);
    REQUIRE(element_order(st, {0, 2, 0}) == 3);
    REQUIRE(element_order(st, {0, 0, 1}) == 0);
    REQUIRE(element_order(st, {2, 6, 0}) == 1);
    REQUIRE(element_is_zero(st, {2, 6, 0}));
}

TEST_CASE("hom into cyclic groups") {
    // A = Z/4 + Z/2, m = 8: Hom(A, Z/8) = Z/4 + Z/2.
    IntMatrix rel(2, 2);
    rel.set(0, 0, 4);
    rel.set(1, 1, 2);
    PresentedGroup a(2, rel);
    HomIntoCyclic h = hom_into_cyclic(a, 8);
    FGAbelianGroup type = analyze_presentation(h.hom).isomorphism_type();
    REQUIRE(type == FGAbelianGroup::from_divisors(0, {4, 2}));

    // Hom(Z, Z/m) = Z/m.
    PresentedGroup zfree(1, IntMatrix(1, 0));
    HomIntoCyclic hz = hom_into_cyclic(zfree, 12);
    REQUIRE(analyze_presentation(hz.hom).isomorphism_type() ==
            FGAbelianGroup::from_divisors(0, {12}));
}

namespace {

PresentedGroup cyclic_product(const std::vector<long long>& orders) {
    IntMatrix rel(static_cast<int>(orders.size()), static_cast<int>(orders.size()));
    for (std::size_t i = 0; i < orders.size(); ++i)
        rel.set(static_cast<int>(i), static_cast<int>(i), orders[i]);
    return PresentedGroup(static_cast<int>(orders.size()), rel);
}

IntMatrix to_matrix(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()),
                rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.set(static_cast<int>(r), static_cast<int>(c), rows[r][c]);
    return m;
}

}  // namespace

TEST_CASE("dual surjectivity for the divisible p-primary target") {
    PresentedGroup zz(1, IntMatrix(1, 0));

    SECTION("multiplication by 2 on Z is dual surjective") {
        IntMatrix two{{2}};
        REQUIRE(prufer_dual_surjective(zz, zz, two, 2));
        REQUIRE(prufer_dual_surjective(zz, zz, two, 3));
    }

    SECTION("the zero map out of Z is not") {
        IntMatrix zero(1, 1);
        REQUIRE_FALSE(prufer_dual_surjective(zz, zz, zero, 2));
    }

    SECTION("multiplication by 2 on Z/4 is not dual surjective at 2") {
        PresentedGroup z4 = cyclic_product({4});
        IntMatrix two{{2}};
        REQUIRE_FALSE(prufer_dual_surjective(z4, z4, two, 2));
        REQUIRE(prufer_dual_surjective(z4, z4, two, 3));
    }

    SECTION("injection Z/2 -> Z/4 is dual surjective, projection Z/4 -> Z/2 is not") {
        PresentedGroup z2 = cyclic_product({2});
        PresentedGroup z4 = cyclic_product({4});
        REQUIRE(prufer_dual_surjective(z2, z4, IntMatrix{{2}}, 2));
        REQUIRE_FALSE(prufer_dual_surjective(z4, z2, IntMatrix{{1}}, 2));
    }

    SECTION("torsion kernel blocks surjectivity") {
        // Projection Z + Z/2 -> Z.
        IntMatrix rel(2, 1);
        rel.set(1, 0, 2);
        PresentedGroup mixed(2, rel);
        IntMatrix proj(1, 2);
        proj.set(0, 0, 1);
        REQUIRE_FALSE(prufer_dual_surjective(mixed, zz, proj, 2));
        REQUIRE(prufer_dual_surjective(mixed, zz, proj, 3));
    }
}

TEST_CASE("dual surjectivity agrees with exhaustive enumeration") {
    std::mt19937_64 rng(424242);
    std::vector<std::vector<long long>> group_pool = {
        {2}, {4}, {8}, {2, 2}, {2, 4}, {4, 4}, {2, 2, 2}, {16}, {2, 8}, {4, 2, 2}};

    for (int trial = 0; trial < 200; ++trial) {
        const auto& a_orders = group_pool[rng() % group_pool.size()];
        const auto& b_orders = group_pool[rng() % group_pool.size()];
        // Random valid map: generator i of order d_i must land on an element
        // annihilated by d_i, i.e. a multiple of d_j / gcd(d_i, d_j).
        std::vector<std::vector<long long>> map(b_orders.size(),
                                                std::vector<long long>(a_orders.size()));
        for (std::size_t j = 0; j < b_orders.size(); ++j)
            for (std::size_t i = 0; i < a_orders.size(); ++i) {
                long long step = b_orders[j] / oracles::gcd_ll(a_orders[i], b_orders[j]);
                long long count = b_orders[j] / step;
                map[j][i] = step * static_cast<long long>(rng() % count);
            }

        long long max_order = 1;
        for (long long d : a_orders) max_order = std::max(max_order, d);
        for (long long d : b_orders) max_order = std::max(max_order, d);
        long long m = 2 * max_order;  // p = 2 throughout the pool

        bool brute = oracles::dual_map_surjective_brute(a_orders, b_orders, map, m);
        bool fast = prufer_dual_surjective(cyclic_product(a_orders),
                                           cyclic_product(b_orders), to_matrix(map), 2);
        CAPTURE(trial, a_orders, b_orders, map);
        REQUIRE(fast == brute);
    }
}
