#ifndef MARKOV_STAR_HPP
#define MARKOV_STAR_HPP

#include <stdexcept>

#include "markov/chain_complex.hpp"
#include "markov/coefficients.hpp"
#include "markov/simplicial_map.hpp"
#include "markov/smith.hpp"

namespace markov {

namespace detail {

/// Columns generating the degree-m cocycles of a pair over R. Fields get a
/// genuine nullspace basis; for the subrings of Q the integral kernel lattice
/// suffices, because the cochain groups are flat and kernels localize.
inline IntMatrix cocycle_generators(const PairChainComplex& cc, int m,
                                    const CoefficientSpec& r) {
    IntMatrix delta = cc.coboundary(m);
    if (r.is_field()) return nullspace_over_field(delta, r);
    return kernel_lattice_basis(delta);
}

}  // namespace detail

/**
 * Image-containment condition on degree-m cohomology for a map phi, a pair
 * A c N of closed subcomplexes of its codomain, and a source pair
 * src_a c src_n of closed subcomplexes of its domain that phi carries into A
 * and N: every class of H^m(A; R) pulled back to src_a must lie in the image
 * of the restriction H^m(src_n; R) -> H^m(src_a; R).
 *
 * The source pair is passed separately because phi is often a simplicial
 * approximation of the map whose preimages the pair describes; the
 * approximation maps those preimages into the base pair, which is exactly
 * the condition checked here.
 *
 * Decided on the cochain lattice: the pulled cocycle generators of A must
 * fall in the span of the restricted cocycles of src_n together with the
 * coboundaries of src_a. Divisible quotient coefficients carry no cochain
 * lattice and are rejected.
 */
inline bool star_condition(const SimplicialMap& phi, const SubcomplexMask& n_mask,
                           const SubcomplexMask& a_mask, const SubcomplexMask& src_n,
                           const SubcomplexMask& src_a, int m,
                           const CoefficientSpec& r) {
    if (r.kind == CoeffKind::PruferQuotient)
        throw std::invalid_argument("star_condition: quotient coefficients unsupported");
    if (m < 0) throw std::invalid_argument("star_condition: negative degree");
    if (n_mask.parent() != phi.codomain() || a_mask.parent() != phi.codomain())
        throw std::invalid_argument("star_condition: masks must live on the codomain");
    if (src_n.parent() != phi.domain() || src_a.parent() != phi.domain())
        throw std::invalid_argument("star_condition: source masks must live on the domain");
    if (!a_mask.is_subset_of(n_mask) || !src_a.is_subset_of(src_n))
        throw std::invalid_argument("star_condition: A must be contained in N");
    for (const Simplex& s : src_a.simplices())
        if (!a_mask.contains(phi.image_simplex(s)))
            throw std::invalid_argument("star_condition: phi does not carry src_a into A");
    for (const Simplex& s : src_n.simplices())
        if (!n_mask.contains(phi.image_simplex(s)))
            throw std::invalid_argument("star_condition: phi does not carry src_n into N");

    PairChainComplex a_cc = PairChainComplex::absolute(a_mask);
    IntMatrix generators = detail::cocycle_generators(a_cc, m, r);
    if (generators.cols() == 0) return true;

    PairChainComplex xa_cc = PairChainComplex::absolute(src_a);
    PairChainComplex xn_cc = PairChainComplex::absolute(src_n);

    IntMatrix target = cochain_map_matrix(phi, xa_cc, a_cc, m) * generators;
    IntMatrix restricted = inclusion_chain_matrix(xa_cc, xn_cc, m).transpose() *
                           detail::cocycle_generators(xn_cc, m, r);
    IntMatrix coboundaries =
        m == 0 ? IntMatrix(xa_cc.rank(0), 0) : xa_cc.coboundary(m - 1);
    return image_contained(target, restricted.hstack(coboundaries), r);
}

/// The source pair defaults to the simplicial preimages under phi itself.
inline bool star_condition(const SimplicialMap& phi, const SubcomplexMask& n_mask,
                           const SubcomplexMask& a_mask, int m,
                           const CoefficientSpec& r) {
    if (n_mask.parent() != phi.codomain() || a_mask.parent() != phi.codomain())
        throw std::invalid_argument("star_condition: masks must live on the codomain");
    return star_condition(phi, n_mask, a_mask, preimage_mask(phi, n_mask),
                          preimage_mask(phi, a_mask), m, r);
}

}  // namespace markov

#endif
