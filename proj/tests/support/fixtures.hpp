#ifndef MARKOV_TEST_FIXTURES_HPP
#define MARKOV_TEST_FIXTURES_HPP

#include <vector>

#include "markov/simplicial_complex.hpp"

namespace fixtures {

using markov::ComplexPtr;
using markov::Simplex;
using markov::SimplicialComplex;
using markov::make_complex;

inline ComplexPtr cycle(int n) {
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i) edges.push_back(markov::sorted_simplex({i, (i + 1) % n}));
    return make_complex(SimplicialComplex::from_maximal(edges));
}

/// Six-vertex triangulation of the real projective plane (antipodal
/// icosahedron quotient).
inline ComplexPtr projective_plane() {
    return make_complex(SimplicialComplex::from_maximal({{0, 1, 3},
                                                         {0, 1, 5},
                                                         {0, 2, 3},
                                                         {0, 2, 4},
                                                         {0, 4, 5},
                                                         {1, 2, 4},
                                                         {1, 2, 5},
                                                         {1, 3, 4},
                                                         {2, 3, 5},
                                                         {3, 4, 5}}));
}

/// Seven-vertex triangulation of the torus: triangles {i, i+1, i+3} and
/// {i, i+2, i+3} over Z/7.
inline ComplexPtr torus() {
    std::vector<Simplex> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back(markov::sorted_simplex({i, (i + 1) % 7, (i + 3) % 7}));
        tris.push_back(markov::sorted_simplex({i, (i + 2) % 7, (i + 3) % 7}));
    }
    return make_complex(SimplicialComplex::from_maximal(tris));
}

}  // namespace fixtures

#endif
