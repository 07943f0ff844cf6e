#ifndef MARKOV_SUBDIVISION_HPP
#define MARKOV_SUBDIVISION_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"

namespace markov {

/**
 * Barycentric subdivision of a complex. New vertices correspond to parent
 * simplices, numbered by (dimension, lexicographic) order; simplices are the
 * chains of parent simplices ordered by strict inclusion.
 */
struct Subdivision {
    ComplexPtr parent;
    ComplexPtr complex;
    std::vector<Simplex> carrier;       // per new vertex, the parent simplex
    std::map<Simplex, int> vertex_of;   // inverse of carrier

    /// Simplicial approximation of the identity, vertex -> least carrier vertex.
    SimplicialMap approximation() const {
        std::vector<int> vm(carrier.size());
        for (std::size_t v = 0; v < carrier.size(); ++v) vm[v] = carrier[v].front();
        return SimplicialMap(complex, parent, std::move(vm), false);
    }
};

inline Subdivision barycentric_subdivision(const ComplexPtr& k) {
    Subdivision out;
    out.parent = k;
    int next = 0;
    for (int d = 0; d <= k->dim(); ++d)
        for (const Simplex& s : k->simplices(d)) {
            out.carrier.push_back(s);
            out.vertex_of[s] = next++;
        }
    std::vector<Simplex> gens;
    for (const Simplex& top : k->maximal_simplices()) {
        Simplex perm = top;
        std::sort(perm.begin(), perm.end());
        do {
            Simplex chain;
            Simplex prefix;
            for (int v : perm) {
                prefix.push_back(v);
                chain.push_back(out.vertex_of.at(sorted_simplex(prefix)));
            }
            gens.push_back(sorted_simplex(std::move(chain)));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.complex = make_complex(SimplicialComplex::from_maximal(gens));
    return out;
}

/**
 * Functorial extension of f to the subdivisions: the vertex of a parent
 * simplex goes to the vertex of its image simplex.
 */
inline SimplicialMap subdivided_map(const SimplicialMap& f, const Subdivision& dom,
                                    const Subdivision& cod) {
    std::vector<int> vm(dom.carrier.size());
    for (std::size_t v = 0; v < dom.carrier.size(); ++v)
        vm[v] = cod.vertex_of.at(f.image_simplex(dom.carrier[v]));
    return SimplicialMap(dom.complex, cod.complex, std::move(vm), false);
}

/**
 * The map sending the vertex of each parent d-simplex to vertex d of the
 * full n-simplex. Light, because dimensions increase strictly along chains.
 */
inline SimplicialMap characteristic_map(const Subdivision& sub, int n,
                                        const ComplexPtr& plain) {
    if (sub.parent->dim() > n)
        throw std::invalid_argument("characteristic_map: parent dimension exceeds n");
    if (plain->dim() != n || plain->count(0) != static_cast<std::size_t>(n + 1))
        throw std::invalid_argument("characteristic_map: codomain is not the n-simplex");
    std::vector<int> vm(sub.carrier.size());
    for (std::size_t v = 0; v < sub.carrier.size(); ++v)
        vm[v] = static_cast<int>(sub.carrier[v].size()) - 1;
    return SimplicialMap(sub.complex, plain, std::move(vm), false);
}

/// Carriers in the base complex after a further subdivision step: the join
/// of base carriers over the vertices of the intermediate carrier.
inline std::vector<Simplex> propagate_carriers(const std::vector<Simplex>& fine_carrier,
                                               const std::vector<Simplex>& mid_carrier) {
    std::vector<Simplex> out(fine_carrier.size());
    for (std::size_t v = 0; v < fine_carrier.size(); ++v) {
        Simplex acc;
        for (int u : fine_carrier[v]) acc = simplex_join(acc, mid_carrier[u]);
        out[v] = std::move(acc);
    }
    return out;
}

}  // namespace markov

#endif
