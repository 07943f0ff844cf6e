#ifndef MARKOV_HOMOLOGY_HPP
#define MARKOV_HOMOLOGY_HPP

#include <optional>
#include <vector>

#include "markov/abelian.hpp"
#include "markov/chain_complex.hpp"
#include "markov/coefficients.hpp"
#include "markov/int_matrix.hpp"
#include "markov/smith.hpp"

namespace markov {

/**
 * A homology or cohomology group presented as a subquotient: an integral
 * basis of the cycle (or cocycle) lattice, with the boundary image expressed
 * in its coordinates as relations.
 */
struct Subquotient {
    int degree = 0;
    IntMatrix cycles;  // ambient (co)chain coordinates, columns form a basis
    PresentedGroup group;
    GroupStructure structure;

    FGAbelianGroup type() const { return structure.isomorphism_type(); }

    /// Coordinates of an ambient cycle in the chosen basis.
    std::vector<BigInt> coordinates(const std::vector<BigInt>& ambient) const {
        auto sol = solve_integer(cycles, ambient);
        if (!sol) throw std::invalid_argument("vector is not a cycle of this group");
        return *sol;
    }

    BigInt class_order(const std::vector<BigInt>& ambient) const {
        return element_order(structure, coordinates(ambient));
    }
};

namespace detail {

inline Subquotient subquotient_from(IntMatrix kernel_of, IntMatrix image_of, int degree) {
    Subquotient out;
    out.degree = degree;
    out.cycles = kernel_lattice_basis(kernel_of);
    auto rel = solve_integer_matrix(out.cycles, image_of);
    if (!rel) throw std::logic_error("boundary image escaped the cycle lattice");
    out.group = PresentedGroup(out.cycles.cols(), *rel);
    out.structure = analyze_presentation(out.group);
    return out;
}

}  // namespace detail

/// H_k of the pair, as a subquotient of C_k.
inline Subquotient homology(const PairChainComplex& cc, int k) {
    if (k < 0 || k > cc.dim())
        return detail::subquotient_from(IntMatrix(0, 0), IntMatrix(0, 0), k);
    IntMatrix b_up = cc.boundary(k + 1);
    return detail::subquotient_from(cc.boundary(k), std::move(b_up), k);
}

/// H^k of the pair, as a subquotient of C^k.
inline Subquotient cohomology(const PairChainComplex& cc, int k) {
    if (k < 0 || k > cc.dim())
        return detail::subquotient_from(IntMatrix(0, 0), IntMatrix(0, 0), k);
    return detail::subquotient_from(cc.coboundary(k),
                                    k == 0 ? IntMatrix(cc.rank(0), 0)
                                           : cc.boundary(k).transpose(),
                                    k);
}

inline FGAbelianGroup homology_group(const PairChainComplex& cc, int k) {
    return homology(cc, k).type();
}

/// dim over Q or F_p of H_k, equal to that of H^k.
inline long long field_dim(const PairChainComplex& cc, int k, const CoefficientSpec& field) {
    if (k < 0 || k > cc.dim()) return 0;
    long long chains = cc.rank(k);
    return chains - rank_over_field(cc.boundary(k), field) -
           rank_over_field(cc.boundary(k + 1), field);
}

/**
 * Matrix of the induced map between subquotients, given the matrix of the
 * underlying (co)chain-level map. Columns: source generators, in the
 * coordinates of the destination basis.
 */
inline IntMatrix induced_on_subquotient(const Subquotient& src, const Subquotient& dst,
                                        const IntMatrix& level_map) {
    auto coords = solve_integer_matrix(dst.cycles, level_map * src.cycles);
    if (!coords) throw std::logic_error("induced map does not preserve cycles");
    return *coords;
}

/// The induced map written between normalized generators: rows and columns
/// follow structure.normal_gens() of destination and source.
inline IntMatrix induced_on_normal_forms(const Subquotient& src, const Subquotient& dst,
                                         const IntMatrix& level_map) {
    return dst.structure.to_normal * (induced_on_subquotient(src, dst, level_map) *
                                      src.structure.normal_reps);
}

/**
 * Whether the induced map on degree-k cohomology is surjective over R, where
 * `pull` is the cochain pullback C^k(source side) -> C^k(target side).
 *
 * Fields get the cochain-level rank test on the target complex; localizations
 * of Z go through the integral presentations, which is valid because those
 * coefficients are flat.
 */
inline bool cohomology_map_surjective(const PairChainComplex& from_cc,
                                      const PairChainComplex& to_cc,
                                      const IntMatrix& pull, int k,
                                      const CoefficientSpec& R) {
    if (R.is_field()) {
        IntMatrix z_from = nullspace_over_field(from_cc.coboundary(k), R);
        long long target_dim =
            to_cc.rank(k) - rank_over_field(to_cc.coboundary(k), R);
        IntMatrix image = pull * z_from;
        IntMatrix prior = k == 0 ? IntMatrix(to_cc.rank(0), 0)
                                 : to_cc.boundary(k).transpose();
        return rank_over_field(image.hstack(prior), R) == target_dim;
    }
    if (!R.is_zlike())
        throw std::invalid_argument("cohomology_map_surjective: unsupported coefficients");
    Subquotient from = cohomology(from_cc, k);
    Subquotient to = cohomology(to_cc, k);
    IntMatrix induced = induced_on_subquotient(from, to, pull);
    return presented_map_surjective(induced, to.group.relations, R);
}

/**
 * Isomorphism type of H^k with coefficients in the Pruefer group at p,
 * through the natural identification with Hom(H_k, divisible target): the
 * free rank counts divisible summands and the p-torsion carries over.
 */
struct PruferCohomology {
    long long divisible_rank = 0;
    std::vector<int> torsion_exponents;  // ascending

    bool is_trivial() const { return divisible_rank == 0 && torsion_exponents.empty(); }
};

inline PruferCohomology prufer_cohomology(const PairChainComplex& cc, int k, long long p) {
    FGAbelianGroup h = homology_group(cc, k);
    PruferCohomology out;
    out.divisible_rank = h.free_rank;
    out.torsion_exponents = h.p_exponents(p);
    return out;
}

}  // namespace markov

#endif
