#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "markov/chain_complex.hpp"
#include "markov/cylinder.hpp"
#include "markov/homology.hpp"
#include "markov/induced.hpp"
#include "markov/simplicial_map.hpp"
#include "markov/subdivision.hpp"
#include "markov/triangulation.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace markov;

namespace {

std::vector<BigInt> unit_vector(int size, int at) {
    std::vector<BigInt> v(size, 0);
    v[at] = 1;
    return v;
}

}  // namespace

TEST_CASE("plain and barycentric triangulations verify") {
    for (int n = 1; n <= 3; ++n) {
        std::string why;
        SymmetricTriangulation t = plain_triangulation(n);
        INFO(why);
        REQUIRE(verify_triangulation(t, &why));
        REQUIRE(t.symmetric);

        SymmetricTriangulation b = barycentric_refine(t);
        REQUIRE(verify_triangulation(b, &why));
        REQUIRE(b.symmetric);
    }

    SymmetricTriangulation b2 = barycentric_refine(barycentric_refine(plain_triangulation(2)));
    std::string why;
    INFO(why);
    REQUIRE(verify_triangulation(b2, &why));
    REQUIRE(b2.complex->vertex_count() == 25);
    REQUIRE(b2.complex->count(1) == 60);
    REQUIRE(b2.complex->count(2) == 36);
}

TEST_CASE("cone triangulations verify and cone(2) is the barycentric subdivision") {
    std::string why;
    for (int q : {1, 2, 3, 4}) {
        SymmetricTriangulation t = cone_triangulation(q);
        INFO("q=" << q << ": " << why);
        REQUIRE(verify_triangulation(t, &why));
        REQUIRE(t.complex->vertex_count() == 3 * q + 1);
        REQUIRE(t.complex->count(2) == static_cast<std::size_t>(3 * q));
        REQUIRE(t.actions.size() == 6);
    }

    SymmetricTriangulation c2 = cone_triangulation(2);
    Subdivision beta = barycentric_subdivision(make_complex(SimplicialComplex::full_simplex(2)));
    auto iso = find_isomorphism(*c2.complex, *beta.complex);
    REQUIRE(iso.has_value());
}

TEST_CASE("face masks and fundamental cycles") {
    SymmetricTriangulation t = cone_triangulation(2);

    SubcomplexMask side = face_mask(t, {0, 1});
    REQUIRE(side.size() == 5);  // two corners, one midpoint, two edges
    SubcomplexMask rim = boundary_face_mask(t, {0, 1, 2});
    REQUIRE(rim.size() == 12);

    auto fc = fundamental_cycle(t, {0, 1, 2});
    REQUIRE(fc.size() == t.complex->count(2));
    std::vector<BigInt> chain(t.complex->count(2), 0);
    for (auto [i, s] : fc) {
        REQUIRE((s == 1 || s == -1));
        chain[i] = s;
    }

    PairChainComplex pair(SubcomplexMask::full(t.complex), rim);
    std::vector<BigInt> image(pair.rank(1), 0);
    // Restrict the chain to the pair basis before applying the boundary.
    std::vector<BigInt> restricted(pair.rank(2), 0);
    for (auto [i, s] : fc) restricted[pair.position_of(2, i)] = s;
    auto b = pair.boundary(2).apply(restricted);
    for (const auto& x : b) REQUIRE(x == 0);
}

TEST_CASE("edge fundamental cycle is a relative cycle of the side pair") {
    SymmetricTriangulation t = cone_triangulation(3);
    auto fc = fundamental_cycle(t, {1, 2});
    REQUIRE(fc.size() == 3);

    PairChainComplex pair(face_mask(t, {1, 2}), boundary_face_mask(t, {1, 2}));
    REQUIRE(pair.rank(1) == 3);
    std::vector<BigInt> restricted(pair.rank(1), 0);
    for (auto [i, s] : fc) restricted[pair.position_of(1, i)] = s;
    auto b = pair.boundary(1).apply(restricted);
    REQUIRE(b.empty() == (pair.rank(0) == 0));
    for (const auto& x : b) REQUIRE(x == 0);
}

TEST_CASE("induced subdivision along the identity reproduces the triangulation") {
    ComplexPtr simplex = make_complex(SimplicialComplex::full_simplex(2));
    SimplicialMap id = SimplicialMap::identity(simplex);
    SymmetricTriangulation tau = cone_triangulation(2);

    InducedSubdivision ind = induce_along(id, tau);
    REQUIRE(ind.complex->vertex_count() == tau.complex->vertex_count());
    REQUIRE(ind.complex->count(2) == tau.complex->count(2));
    REQUIRE(ind.chi_prime.is_light());
    auto iso = find_isomorphism(*ind.complex, *tau.complex);
    REQUIRE(iso.has_value());
}

TEST_CASE("induced subdivision along a circle inclusion subdivides the circle") {
    ComplexPtr circle = make_complex(SimplicialComplex::boundary_of_simplex(2));
    ComplexPtr simplex = make_complex(SimplicialComplex::full_simplex(2));
    SimplicialMap chi(circle, simplex, {0, 1, 2});
    REQUIRE(chi.is_light());

    InducedSubdivision ind = induce_along(chi, cone_triangulation(2));
    REQUIRE(ind.complex->vertex_count() == 6);
    REQUIRE(ind.complex->count(1) == 6);
    auto iso = find_isomorphism(*ind.complex, *fixtures::cycle(6));
    REQUIRE(iso.has_value());

    // Re-verify the stored maps as simplicial maps.
    SimplicialMap(ind.complex, cone_triangulation(2).complex, ind.chi_prime.vertex_map(), true);
    SimplicialMap(ind.complex, circle, ind.approximation.vertex_map(), true);
}

TEST_CASE("inducing the barycentric triangulation gives the barycentric subdivision") {
    Subdivision sub = barycentric_subdivision(make_complex(SimplicialComplex::full_simplex(2)));
    ComplexPtr plain = make_complex(SimplicialComplex::full_simplex(2));
    SimplicialMap chi = characteristic_map(sub, 2, plain);

    SymmetricTriangulation tau = barycentric_refine(plain_triangulation(2));
    InducedSubdivision ind = induce_along(chi, tau);

    Subdivision again = barycentric_subdivision(sub.complex);
    REQUIRE(ind.complex->vertex_count() == again.complex->vertex_count());
    REQUIRE(ind.complex->count(1) == again.complex->count(1));
    REQUIRE(ind.complex->count(2) == again.complex->count(2));
    auto iso = find_isomorphism(*ind.complex, *again.complex);
    REQUIRE(iso.has_value());
}

TEST_CASE("homology of spheres and disks") {
    PairChainComplex disk =
        PairChainComplex::whole_complex(make_complex(SimplicialComplex::full_simplex(2)));
    REQUIRE(homology_group(disk, 0).to_string() == "Z");
    REQUIRE(homology_group(disk, 1).is_trivial());
    REQUIRE(homology_group(disk, 2).is_trivial());

    PairChainComplex sphere =
        PairChainComplex::whole_complex(make_complex(SimplicialComplex::boundary_of_simplex(3)));
    REQUIRE(homology_group(sphere, 0).to_string() == "Z");
    REQUIRE(homology_group(sphere, 1).is_trivial());
    REQUIRE(homology_group(sphere, 2).to_string() == "Z");
    REQUIRE(cohomology(sphere, 2).type().to_string() == "Z");
    REQUIRE(field_dim(sphere, 2, CoefficientSpec::Q()) == 1);
    REQUIRE(field_dim(sphere, 1, CoefficientSpec::Fp(2)) == 0);
}

TEST_CASE("homology of the projective plane") {
    PairChainComplex cc = PairChainComplex::whole_complex(fixtures::projective_plane());
    REQUIRE(homology_group(cc, 0).to_string() == "Z");
    REQUIRE(homology_group(cc, 1).to_string() == "Z/2");
    REQUIRE(homology_group(cc, 2).is_trivial());

    REQUIRE(cohomology(cc, 2).type().to_string() == "Z/2");
    REQUIRE(cohomology(cc, 1).type().is_trivial());

    auto q = CoefficientSpec::Q();
    auto f2 = CoefficientSpec::Fp(2);
    auto f3 = CoefficientSpec::Fp(3);
    REQUIRE(field_dim(cc, 0, f2) == 1);
    REQUIRE(field_dim(cc, 1, f2) == 1);
    REQUIRE(field_dim(cc, 2, f2) == 1);
    REQUIRE(field_dim(cc, 1, q) == 0);
    REQUIRE(field_dim(cc, 2, q) == 0);
    REQUIRE(field_dim(cc, 1, f3) == 0);

    // The dual cochain of any single 2-cell represents the generator of H^2.
    Subquotient h2 = cohomology(cc, 2);
    REQUIRE(h2.class_order(unit_vector(cc.rank(2), 0)) == 2);
}

TEST_CASE("homology of the torus") {
    PairChainComplex cc = PairChainComplex::whole_complex(fixtures::torus());
    REQUIRE(homology_group(cc, 0).to_string() == "Z");
    REQUIRE(homology_group(cc, 1).to_string() == "Z^2");
    REQUIRE(homology_group(cc, 2).to_string() == "Z");
    REQUIRE(field_dim(cc, 1, CoefficientSpec::Fp(2)) == 2);
    REQUIRE(field_dim(cc, 1, CoefficientSpec::Q()) == 2);
}

TEST_CASE("relative homology of the disk modulo its boundary") {
    ComplexPtr disk = make_complex(SimplicialComplex::full_simplex(2));
    SubcomplexMask boundary = SubcomplexMask::from_simplices(
        disk, {{0, 1}, {0, 2}, {1, 2}});
    PairChainComplex cc(SubcomplexMask::full(disk), boundary);

    REQUIRE(homology_group(cc, 0).is_trivial());
    REQUIRE(homology_group(cc, 1).is_trivial());
    REQUIRE(homology_group(cc, 2).to_string() == "Z");
    REQUIRE(cohomology(cc, 2).type().to_string() == "Z");
}

TEST_CASE("mapping cylinder of the double cover of the circle") {
    SimplicialMap wrap(fixtures::cycle(6), fixtures::cycle(3), {0, 1, 2, 0, 1, 2});
    MappingCylinder cyl = mapping_cylinder(wrap);
    PairChainComplex whole = PairChainComplex::whole_complex(cyl.complex);

    REQUIRE(homology_group(whole, 0).to_string() == "Z");
    REQUIRE(homology_group(whole, 1).to_string() == "Z");
    REQUIRE(cohomology(whole, 1).type().to_string() == "Z");
    REQUIRE(homology_group(whole, 2).is_trivial());

    PairChainComplex pair(SubcomplexMask::full(cyl.complex), cyl.domain_end);
    REQUIRE(homology_group(pair, 1).to_string() == "Z/2");
    REQUIRE(homology_group(pair, 2).is_trivial());
    Subquotient h2 = cohomology(pair, 2);
    REQUIRE(h2.type().to_string() == "Z/2");
    REQUIRE(h2.class_order(unit_vector(pair.rank(2), 0)) == 2);
}

TEST_CASE("chain map induced by the double cover multiplies H_1 by two") {
    SimplicialMap wrap(fixtures::cycle(6), fixtures::cycle(3), {0, 1, 2, 0, 1, 2});
    PairChainComplex x = PairChainComplex::whole_complex(wrap.domain());
    PairChainComplex y = PairChainComplex::whole_complex(wrap.codomain());

    IntMatrix m1 = chain_map_matrix(wrap, x, y, 1);
    Subquotient hx = homology(x, 1);
    Subquotient hy = homology(y, 1);
    IntMatrix induced = induced_on_subquotient(hx, hy, m1);
    REQUIRE(induced.rows() == 1);
    REQUIRE(induced.cols() == 1);
    BigInt deg = induced.at(0, 0);
    REQUIRE(abs(deg) == 2);

    MappingCylinder cyl = mapping_cylinder(wrap);
    PairChainComplex l = PairChainComplex::whole_complex(cyl.complex);
    IntMatrix r1 = chain_map_matrix(cyl.retraction, l, y, 1);
    IntMatrix onto = induced_on_normal_forms(homology(l, 1), hy, r1);
    REQUIRE(onto.rows() == 1);
    REQUIRE(onto.cols() == 1);
    REQUIRE(abs(onto.at(0, 0)) == 1);
}

TEST_CASE("cochain pullback surjectivity depends on the coefficients") {
    SimplicialMap wrap(fixtures::cycle(6), fixtures::cycle(3), {0, 1, 2, 0, 1, 2});
    PairChainComplex x = PairChainComplex::whole_complex(wrap.domain());
    PairChainComplex y = PairChainComplex::whole_complex(wrap.codomain());
    IntMatrix pull = cochain_map_matrix(wrap, x, y, 1);

    REQUIRE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Q()));
    REQUIRE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Fp(3)));
    REQUIRE_FALSE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Fp(2)));
    REQUIRE_FALSE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Z()));
    REQUIRE_FALSE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Zloc(2)));
    REQUIRE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Zloc(3)));
    REQUIRE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Zinv({2})));
    REQUIRE_FALSE(cohomology_map_surjective(y, x, pull, 1, CoefficientSpec::Zinv({3})));

    // Identity pullback is surjective over everything.
    IntMatrix id = IntMatrix::identity(x.rank(1));
    REQUIRE(cohomology_map_surjective(x, x, id, 1, CoefficientSpec::Z()));
    REQUIRE(cohomology_map_surjective(x, x, id, 1, CoefficientSpec::Fp(2)));
}

TEST_CASE("Pruefer coefficients through the homology presentation") {
    PairChainComplex circle = PairChainComplex::whole_complex(fixtures::cycle(3));
    PruferCohomology c1 = prufer_cohomology(circle, 1, 2);
    REQUIRE(c1.divisible_rank == 1);
    REQUIRE(c1.torsion_exponents.empty());

    PairChainComplex rp2 = PairChainComplex::whole_complex(fixtures::projective_plane());
    PruferCohomology r1 = prufer_cohomology(rp2, 1, 2);
    REQUIRE(r1.divisible_rank == 0);
    REQUIRE(r1.torsion_exponents == std::vector<int>{1});
    REQUIRE(prufer_cohomology(rp2, 1, 3).is_trivial());
    REQUIRE(prufer_cohomology(rp2, 2, 2).is_trivial());
}

TEST_CASE("field dimensions agree with independent ranks on random complexes") {
    std::mt19937 rng(20240817);
    auto q = CoefficientSpec::Q();
    std::vector<CoefficientSpec> fields{CoefficientSpec::Fp(2),
                                        CoefficientSpec::Fp(3),
                                        CoefficientSpec::Fp(5)};

    for (int trial = 0; trial < 100; ++trial) {
        int nv = 3 + static_cast<int>(rng() % 6);
        int gens = 2 + static_cast<int>(rng() % 9);
        std::set<Simplex> chosen;
        for (int g = 0; g < gens; ++g) {
            int size = 1 + static_cast<int>(rng() % 4);
            std::set<int> s;
            while (static_cast<int>(s.size()) < std::min(size, nv))
                s.insert(static_cast<int>(rng() % nv));
            chosen.insert(Simplex(s.begin(), s.end()));
        }
        for (int v = 0; v < nv; ++v) chosen.insert({v});  // keep ids dense
        ComplexPtr k = make_complex(SimplicialComplex::from_maximal(
            std::vector<Simplex>(chosen.begin(), chosen.end())));
        PairChainComplex cc = PairChainComplex::whole_complex(k);

        long long euler_from_dims = 0;
        std::vector<FGAbelianGroup> integral;
        for (int d = 0; d <= cc.dim() + 1; ++d) integral.push_back(homology_group(cc, d));

        for (int d = 0; d <= cc.dim(); ++d) {
            const IntMatrix& below = cc.boundary(d);
            const IntMatrix& above = cc.boundary(d + 1);
            long long expect_q = cc.rank(d) - oracles::rational_rank(below) -
                                 oracles::rational_rank(above);
            REQUIRE(field_dim(cc, d, q) == expect_q);
            euler_from_dims += (d % 2 == 0 ? 1 : -1) * expect_q;

            for (const auto& f : fields) {
                long long p = f.p;
                long long expect = cc.rank(d) - oracles::mod_p_rank(below, p) -
                                   oracles::mod_p_rank(above, p);
                REQUIRE(field_dim(cc, d, f) == expect);

                long long uct = integral[d].free_rank +
                                static_cast<long long>(integral[d].p_exponents(p).size()) +
                                static_cast<long long>(
                                    d > 0 ? integral[d - 1].p_exponents(p).size() : 0);
                REQUIRE(field_dim(cc, d, f) == uct);
            }
        }
        REQUIRE(euler_from_dims == k->euler_characteristic());
    }
}

TEST_CASE("out of range degrees are trivial") {
    PairChainComplex cc = PairChainComplex::whole_complex(fixtures::cycle(3));
    REQUIRE(homology_group(cc, -1).is_trivial());
    REQUIRE(homology_group(cc, 2).is_trivial());
    REQUIRE(cohomology(cc, 5).type().is_trivial());
    REQUIRE(field_dim(cc, 3, CoefficientSpec::Q()) == 0);
}
