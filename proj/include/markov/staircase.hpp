#ifndef MARKOV_STAIRCASE_HPP
#define MARKOV_STAIRCASE_HPP

#include <vector>

#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"

namespace markov {

/**
 * Staircase triangulation of the product of two complexes. Vertices are all
 * pairs (x, y), id x * |B vertices| + y. For each pair of simplices the
 * maximal cells are the monotone lattice paths through the vertex grid, so a
 * p-simplex times a q-simplex contributes binomial(p+q, p) cells.
 */
struct StaircaseProduct {
    ComplexPtr complex;
    SimplicialMap to_first;
    SimplicialMap to_second;
    int second_vertices = 0;

    int pair_id(int x, int y) const { return x * second_vertices + y; }
};

inline StaircaseProduct staircase_product(const ComplexPtr& a, const ComplexPtr& b) {
    const int nb = b->vertex_count();
    std::vector<Simplex> gens;

    for (const Simplex& sa : a->maximal_simplices())
        for (const Simplex& sb : b->maximal_simplices()) {
            const int p = static_cast<int>(sa.size()), q = static_cast<int>(sb.size());
            const int steps = p + q - 2;
            // Monotone lattice paths from (0, 0) to (p-1, q-1): choose which
            // steps advance in sa.
            for (unsigned mask = 0; mask < (1u << steps); ++mask) {
                if (__builtin_popcount(mask) != p - 1) continue;
                int i = 0, j = 0;
                Simplex cell{sa[0] * nb + sb[0]};
                for (int s = 0; s < steps; ++s) {
                    if (mask >> s & 1)
                        ++i;
                    else
                        ++j;
                    cell.push_back(sa[i] * nb + sb[j]);
                }
                gens.push_back(sorted_simplex(std::move(cell)));
            }
        }

    StaircaseProduct out;
    out.second_vertices = nb;
    out.complex = make_complex(SimplicialComplex::from_maximal(gens));
    const int total = out.complex->vertex_count();
    std::vector<int> pa(total), pb(total);
    for (int v = 0; v < total; ++v) {
        pa[v] = v / nb;
        pb[v] = v % nb;
    }
    out.to_first = SimplicialMap(out.complex, a, std::move(pa), false);
    out.to_second = SimplicialMap(out.complex, b, std::move(pb), false);
    return out;
}

}  // namespace markov

#endif
