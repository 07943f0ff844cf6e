#ifndef MARKOV_TRIANGULATION_HPP
#define MARKOV_TRIANGULATION_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "markov/int_matrix.hpp"
#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"
#include "markov/subdivision.hpp"

namespace markov {

/**
 * Triangulation of the standard n-simplex with exact barycentric coordinates
 * and a (possibly full) group of coordinate-permuting automorphisms.
 *
 * carrier[v] lists the corner indices of the minimal face containing v, which
 * is exactly the support of coords[v]. actions maps a permutation of
 * {0..n} in one-line notation to the matching vertex automorphism; when
 * `symmetric` holds it covers the whole symmetric group.
 */
struct SymmetricTriangulation {
    int n = 0;
    ComplexPtr complex;
    std::vector<int> corners;
    std::vector<std::vector<int>> carrier;
    std::vector<std::vector<Rational>> coords;
    std::map<std::vector<int>, std::vector<int>> actions;
    bool symmetric = false;
};

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int count) {
    std::vector<int> p(count);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace detail

/// The n-simplex triangulated by itself.
inline SymmetricTriangulation plain_triangulation(int n) {
    SymmetricTriangulation t;
    t.n = n;
    t.complex = make_complex(SimplicialComplex::full_simplex(n));
    t.corners.resize(n + 1);
    std::iota(t.corners.begin(), t.corners.end(), 0);
    for (int v = 0; v <= n; ++v) {
        t.carrier.push_back({v});
        std::vector<Rational> c(n + 1, 0);
        c[v] = 1;
        t.coords.push_back(std::move(c));
    }
    for (const auto& p : detail::all_permutations(n + 1)) t.actions[p] = p;
    t.symmetric = true;
    return t;
}

/// Barycentric refinement; carriers, coordinates and the group action all
/// pass to the subdivision. The overload taking the subdivision lets callers
/// reuse one subdivision object for maps into the refined complex.
inline SymmetricTriangulation barycentric_refine(const SymmetricTriangulation& t,
                                                 const Subdivision& sub) {
    SymmetricTriangulation out;
    out.n = t.n;
    out.complex = sub.complex;
    out.corners.resize(t.n + 1);
    for (int i = 0; i <= t.n; ++i) out.corners[i] = sub.vertex_of.at({t.corners[i]});
    const int verts = static_cast<int>(sub.carrier.size());
    out.carrier.resize(verts);
    out.coords.resize(verts);
    for (int v = 0; v < verts; ++v) {
        const Simplex& parent = sub.carrier[v];
        std::vector<int> car;
        std::vector<Rational> coord(t.n + 1, 0);
        for (int u : parent) {
            std::vector<int> merged;
            std::set_union(car.begin(), car.end(), t.carrier[u].begin(), t.carrier[u].end(),
                           std::back_inserter(merged));
            car = std::move(merged);
            for (int i = 0; i <= t.n; ++i) coord[i] += t.coords[u][i];
        }
        for (int i = 0; i <= t.n; ++i) coord[i] /= static_cast<int>(parent.size());
        out.carrier[v] = std::move(car);
        out.coords[v] = std::move(coord);
    }
    for (const auto& [perm, act] : t.actions) {
        std::vector<int> lifted(verts);
        for (int v = 0; v < verts; ++v) {
            Simplex image;
            for (int u : sub.carrier[v]) image.push_back(act[u]);
            lifted[v] = sub.vertex_of.at(sorted_simplex(std::move(image)));
        }
        out.actions[perm] = std::move(lifted);
    }
    out.symmetric = t.symmetric;
    return out;
}

inline SymmetricTriangulation barycentric_refine(const SymmetricTriangulation& t) {
    return barycentric_refine(t, barycentric_subdivision(t.complex));
}

/**
 * For n = 2: the boundary edges cut into q segments, coned from the
 * barycenter. The boundary vertex on edge (i, j) at parameter k/q has
 * coordinates ((q-k)/q, k/q) on corners (i, j).
 */
inline SymmetricTriangulation cone_triangulation(int q) {
    if (q < 1) throw std::invalid_argument("cone_triangulation: q >= 1 required");
    SymmetricTriangulation t;
    t.n = 2;
    t.corners = {0, 1, 2};
    const std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}, {1, 2}};

    for (int v = 0; v < 3; ++v) {
        t.carrier.push_back({v});
        std::vector<Rational> c(3, 0);
        c[v] = 1;
        t.coords.push_back(std::move(c));
    }
    std::map<std::pair<int, int>, std::vector<int>> edge_vertices;
    int next = 3;
    for (auto [i, j] : edges) {
        std::vector<int> chain{i};
        for (int k = 1; k < q; ++k) {
            t.carrier.push_back({i, j});
            std::vector<Rational> c(3, 0);
            c[i] = Rational(q - k, q);
            c[j] = Rational(k, q);
            t.coords.push_back(std::move(c));
            chain.push_back(next++);
        }
        chain.push_back(j);
        edge_vertices[{i, j}] = chain;
    }
    const int apex = next;
    t.carrier.push_back({0, 1, 2});
    t.coords.push_back({Rational(1, 3), Rational(1, 3), Rational(1, 3)});

    std::vector<Simplex> gens;
    for (auto [i, j] : edges) {
        const auto& chain = edge_vertices[{i, j}];
        for (std::size_t s = 0; s + 1 < chain.size(); ++s)
            gens.push_back(sorted_simplex({chain[s], chain[s + 1], apex}));
    }
    t.complex = make_complex(SimplicialComplex::from_maximal(gens));

    std::map<std::vector<Rational>, int> by_coords;
    for (int v = 0; v < t.complex->vertex_count(); ++v) by_coords[t.coords[v]] = v;
    for (const auto& perm : detail::all_permutations(3)) {
        std::vector<int> act(t.complex->vertex_count());
        for (int v = 0; v < t.complex->vertex_count(); ++v) {
            std::vector<Rational> moved(3);
            for (int i = 0; i < 3; ++i) moved[perm[i]] = t.coords[v][i];
            act[v] = by_coords.at(moved);
        }
        t.actions[perm] = std::move(act);
    }
    t.symmetric = true;
    return t;
}

/// Simplices all of whose vertices live on the given face (corner indices).
inline SubcomplexMask face_mask(const SymmetricTriangulation& t, const std::vector<int>& face) {
    SubcomplexMask m(t.complex);
    for (int d = 0; d <= t.complex->dim(); ++d)
        for (const Simplex& s : t.complex->simplices(d)) {
            bool inside = true;
            for (int v : s)
                if (!simplex_contains(face, t.carrier[v])) { inside = false; break; }
            if (inside) m.insert(s);
        }
    return m;
}

/// The union of the proper facets of the given face.
inline SubcomplexMask boundary_face_mask(const SymmetricTriangulation& t,
                                         const std::vector<int>& face) {
    SubcomplexMask m(t.complex);
    for (std::size_t skip = 0; skip < face.size(); ++skip) {
        std::vector<int> facet;
        for (std::size_t i = 0; i < face.size(); ++i)
            if (i != skip) facet.push_back(face[i]);
        if (facet.empty()) continue;
        SubcomplexMask part = face_mask(t, facet);
        for (const Simplex& s : part.simplices()) m.insert(s);
    }
    return m;
}

namespace detail {

inline Rational rational_det(std::vector<std::vector<Rational>> m) {
    const int n = static_cast<int>(m.size());
    Rational det = 1;
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r)
            if (m[r][k] != 0) { pivot = r; break; }
        if (pivot < 0) return 0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (int r = k + 1; r < n; ++r) {
            if (m[r][k] == 0) continue;
            Rational f = m[r][k] / m[k][k];
            for (int c = k; c < n; ++c) m[r][c] -= f * m[k][c];
        }
    }
    return det;
}

}  // namespace detail

/// Orientation sign of a geometric cell: the determinant of its coordinate
/// matrix restricted to the face's corner rows.
inline int cell_orientation(const SymmetricTriangulation& t, const Simplex& cell,
                            const std::vector<int>& face) {
    std::vector<std::vector<Rational>> m(face.size(), std::vector<Rational>(cell.size()));
    for (std::size_t r = 0; r < face.size(); ++r)
        for (std::size_t c = 0; c < cell.size(); ++c) m[r][c] = t.coords[cell[c]][face[r]];
    Rational d = detail::rational_det(std::move(m));
    return d == 0 ? 0 : d > 0 ? 1 : -1;
}

/**
 * Coefficients of the fundamental cycle of the face pair (F, dF): each top
 * cell of the face, signed by orientation. Indexed by position within the
 * (|face|-1)-simplices of the whole complex.
 */
inline std::map<int, int> fundamental_cycle(const SymmetricTriangulation& t,
                                            const std::vector<int>& face) {
    const int d = static_cast<int>(face.size()) - 1;
    SubcomplexMask inside = face_mask(t, face);
    std::map<int, int> chain;
    const auto& cells = t.complex->simplices(d);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!inside.test(d, static_cast<int>(i))) continue;
        int sign = cell_orientation(t, cells[i], face);
        if (sign != 0) chain[static_cast<int>(i)] = sign;
    }
    return chain;
}

/**
 * Structural checks: pure dimension, coordinate sanity, carriers matching
 * coordinate supports, corners on the standard basis, actions forming a
 * group of automorphisms compatible with coordinate permutation, and
 * geometrically nondegenerate top cells.
 */
inline bool verify_triangulation(const SymmetricTriangulation& t, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int verts = t.complex->vertex_count();
    if (t.complex->dim() != t.n) return fail("dimension mismatch");
    if (static_cast<int>(t.corners.size()) != t.n + 1) return fail("corner count");
    if (static_cast<int>(t.carrier.size()) != verts) return fail("carrier count");
    if (static_cast<int>(t.coords.size()) != verts) return fail("coords count");
    for (const Simplex& s : t.complex->maximal_simplices())
        if (static_cast<int>(s.size()) != t.n + 1) return fail("not pure");
    for (int v = 0; v < verts; ++v) {
        Rational sum = 0;
        std::vector<int> support;
        for (int i = 0; i <= t.n; ++i) {
            if (t.coords[v][i] < 0) return fail("negative coordinate");
            if (t.coords[v][i] != 0) support.push_back(i);
            sum += t.coords[v][i];
        }
        if (sum != 1) return fail("coordinates do not sum to 1");
        if (support != t.carrier[v]) return fail("carrier differs from support");
    }
    for (int i = 0; i <= t.n; ++i) {
        if (t.carrier[t.corners[i]] != std::vector<int>{i}) return fail("corner carrier");
        if (t.coords[t.corners[i]][i] != 1) return fail("corner coordinates");
    }
    for (const Simplex& cell : t.complex->maximal_simplices()) {
        std::vector<int> all(t.n + 1);
        std::iota(all.begin(), all.end(), 0);
        if (cell_orientation(t, cell, all) == 0) return fail("degenerate top cell");
    }
    if (t.symmetric &&
        t.actions.size() != detail::all_permutations(t.n + 1).size())
        return fail("marked symmetric without the full group");
    for (const auto& [perm, act] : t.actions) {
        if (static_cast<int>(act.size()) != verts) return fail("action size");
        for (int v = 0; v < verts; ++v) {
            std::vector<Rational> moved(t.n + 1);
            for (int i = 0; i <= t.n; ++i) moved[perm[i]] = t.coords[v][i];
            if (t.coords[act[v]] != moved) return fail("action breaks coordinates");
        }
        for (const Simplex& s : t.complex->maximal_simplices()) {
            Simplex image;
            for (int v : s) image.push_back(act[v]);
            if (!t.complex->contains(sorted_simplex(std::move(image))))
                return fail("action is not simplicial");
        }
    }
    // Homomorphism property over all pairs.
    for (const auto& [p1, a1] : t.actions)
        for (const auto& [p2, a2] : t.actions) {
            std::vector<int> comp_perm(t.n + 1);
            for (int i = 0; i <= t.n; ++i) comp_perm[i] = p1[p2[i]];
            auto it = t.actions.find(comp_perm);
            if (it == t.actions.end()) return fail("actions not closed under composition");
            for (int v = 0; v < verts; ++v)
                if (it->second[v] != a1[a2[v]]) return fail("actions are not a homomorphism");
        }
    return true;
}

}  // namespace markov

#endif
