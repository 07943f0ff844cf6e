#ifndef MARKOV_INDUCED_HPP
#define MARKOV_INDUCED_HPP

#include <map>
#include <utility>
#include <vector>

#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"
#include "markov/triangulation.hpp"

namespace markov {

/**
 * Subdivision of K induced along a light map chi : K -> full n-simplex by a
 * triangulation tau of that simplex.
 *
 * Each simplex of K maps isomorphically onto a face of the n-simplex, so the
 * part of tau triangulating that face lifts uniquely. Vertices are pairs
 * (rho, u) of a K-simplex and a tau-vertex whose minimal face is the exact
 * image of rho.
 */
struct InducedSubdivision {
    ComplexPtr complex;
    SimplicialMap chi_prime;              // to tau.complex; light
    std::vector<Simplex> vertex_carrier;  // per vertex, the K-simplex rho
    SimplicialMap approximation;          // to K, vertex -> least vertex of rho
};

inline InducedSubdivision induce_along(const SimplicialMap& chi,
                                       const SymmetricTriangulation& tau,
                                       std::size_t max_simplices = 0) {
    if (!chi.is_light()) throw std::invalid_argument("induce_along: chi must be light");
    const SimplicialComplex& k = *chi.domain();
    if (chi.codomain()->dim() != tau.n ||
        chi.codomain()->count(0) != static_cast<std::size_t>(tau.n + 1))
        throw std::invalid_argument("induce_along: chi must land in the full n-simplex");

    // Dense ids for pairs (rho, u), rho in (dim, lex) order.
    std::map<std::pair<Simplex, int>, int> pair_id;
    std::vector<Simplex> carriers;
    std::vector<int> tau_vertex;
    for (int d = 0; d <= k.dim(); ++d)
        for (const Simplex& rho : k.simplices(d)) {
            Simplex image = chi.image_simplex(rho);
            for (int u = 0; u < tau.complex->vertex_count(); ++u)
                if (static_cast<int>(tau.carrier[u].size()) == d + 1 &&
                    std::equal(tau.carrier[u].begin(), tau.carrier[u].end(), image.begin())) {
                    pair_id[{rho, u}] = static_cast<int>(carriers.size());
                    carriers.push_back(rho);
                    tau_vertex.push_back(u);
                }
        }

    std::vector<Simplex> gens;
    for (const Simplex& sigma : k.maximal_simplices()) {
        Simplex face = chi.image_simplex(sigma);
        std::map<int, int> over;  // corner index -> K vertex of sigma
        for (int x : sigma) over[chi(x)] = x;
        const int d = static_cast<int>(face.size()) - 1;
        for (const Simplex& t : tau.complex->simplices(d)) {
            bool inside = true;
            for (int u : t)
                if (!simplex_contains(face, tau.carrier[u])) { inside = false; break; }
            if (!inside) continue;
            Simplex lifted;
            for (int u : t) {
                Simplex rho;
                for (int c : tau.carrier[u]) rho.push_back(over.at(c));
                lifted.push_back(pair_id.at({sorted_simplex(std::move(rho)), u}));
            }
            gens.push_back(sorted_simplex(std::move(lifted)));
        }
    }

    InducedSubdivision out;
    out.complex = make_complex(SimplicialComplex::from_maximal(gens, max_simplices));
    out.vertex_carrier = std::move(carriers);
    std::vector<int> approx(out.vertex_carrier.size());
    for (std::size_t v = 0; v < out.vertex_carrier.size(); ++v)
        approx[v] = out.vertex_carrier[v].front();
    out.chi_prime = SimplicialMap(out.complex, tau.complex, std::move(tau_vertex), false);
    out.approximation = SimplicialMap(out.complex, chi.domain(), std::move(approx), false);
    return out;
}

}  // namespace markov

#endif
