#ifndef MARKOV_BLOCK_HPP
#define MARKOV_BLOCK_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "markov/cylinder.hpp"
#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"
#include "markov/staircase.hpp"
#include "markov/subdivision.hpp"
#include "markov/triangulation.hpp"

namespace markov {

/**
 * Building block of a one-block inverse system: a map f : L -> Delta^n,
 * simplicial with respect to the triangulation tau of the target simplex.
 * A symmetric block also carries a vertex action of the corner permutation
 * group on L making f equivariant for the action on tau.
 */
struct Block {
    int n = 0;
    SymmetricTriangulation tau;
    SimplicialMap f;
    bool symmetric = false;
    std::map<std::vector<int>, std::vector<int>> actions;  // corner permutation -> vertex map of L
    std::string name;
};

namespace detail {

/// Circle with m vertices, m >= 3.
inline ComplexPtr polygon(int m) {
    if (m < 3) throw std::invalid_argument("polygon: at least three vertices");
    std::vector<Simplex> edges;
    for (int i = 0; i < m; ++i) edges.push_back(sorted_simplex({i, (i + 1) % m}));
    return make_complex(SimplicialComplex::from_maximal(edges));
}

/// Boundary vertices of a triangulated 2-simplex in cyclic order: corner 0,
/// the open edge (0,1), corner 1, edge (1,2), corner 2, edge (2,0). Interior
/// edge vertices are ordered by their coordinate on the edge's target corner.
inline std::vector<int> boundary_walk(const SymmetricTriangulation& t) {
    if (t.n != 2) throw std::invalid_argument("boundary_walk: two-dimensional only");
    std::vector<int> walk;
    const int legs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (const auto& leg : legs) {
        walk.push_back(t.corners[leg[0]]);
        std::vector<int> interior;
        const std::vector<int> carrier = leg[0] < leg[1]
                                             ? std::vector<int>{leg[0], leg[1]}
                                             : std::vector<int>{leg[1], leg[0]};
        for (int v = 0; v < static_cast<int>(t.carrier.size()); ++v)
            if (t.carrier[v] == carrier) interior.push_back(v);
        std::sort(interior.begin(), interior.end(), [&](int x, int y) {
            return t.coords[x][leg[1]] < t.coords[y][leg[1]];
        });
        walk.insert(walk.end(), interior.begin(), interior.end());
    }
    return walk;
}

/// The unique vertex supported on all corners; the cone triangulations have
/// exactly one.
inline int interior_vertex(const SymmetricTriangulation& t) {
    int found = -1;
    for (int v = 0; v < static_cast<int>(t.carrier.size()); ++v) {
        if (static_cast<int>(t.carrier[v].size()) != t.n + 1) continue;
        if (found >= 0) throw std::invalid_argument("interior_vertex: not unique");
        found = v;
    }
    if (found < 0) throw std::invalid_argument("interior_vertex: none");
    return found;
}

}  // namespace detail

/**
 * Structural soundness of a block: the triangulation verifies, f is a
 * simplicial map onto that triangulation, and a symmetric block carries a
 * full equivariant group action on the domain.
 */
inline bool verify_block(const Block& b, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (b.n != b.tau.n) return fail("block dimension differs from triangulation");
    if (!verify_triangulation(b.tau, why)) return false;
    if (!b.f.domain()) return fail("block map has no domain");
    if (b.f.codomain() != b.tau.complex) return fail("map codomain is not the triangulation");
    for (const Simplex& s : b.f.domain()->maximal_simplices())
        if (!b.tau.complex->contains(b.f.image_simplex(s)))
            return fail("map is not simplicial");
    if (!b.symmetric) return true;
    if (!b.tau.symmetric) return fail("symmetric block over an asymmetric triangulation");
    if (b.actions.size() != b.tau.actions.size()) return fail("domain action misses permutations");
    const int verts = b.f.domain()->vertex_count();
    for (const auto& [perm, act] : b.actions) {
        if (!b.tau.actions.count(perm)) return fail("domain action over unknown permutation");
        if (static_cast<int>(act.size()) != verts) return fail("domain action size");
        const std::vector<int>& down = b.tau.actions.at(perm);
        for (int v = 0; v < verts; ++v)
            if (b.f(act[v]) != down[b.f(v)]) return fail("action does not commute with the map");
        for (const Simplex& s : b.f.domain()->maximal_simplices()) {
            Simplex image;
            for (int v : s) image.push_back(act[v]);
            if (!b.f.domain()->contains(sorted_simplex(std::move(image))))
                return fail("domain action is not simplicial");
        }
    }
    for (const auto& [p1, a1] : b.actions)
        for (const auto& [p2, a2] : b.actions) {
            std::vector<int> comp(b.n + 1);
            for (int i = 0; i <= b.n; ++i) comp[i] = p1[p2[i]];
            auto it = b.actions.find(comp);
            if (it == b.actions.end()) return fail("domain actions not closed");
            for (int v = 0; v < verts; ++v)
                if (it->second[v] != a1[a2[v]])
                    return fail("domain actions are not a homomorphism");
        }
    return true;
}

/// The n-simplex over itself: stages of its system are iterated barycentric
/// subdivisions and the limit is the simplex.
inline Block identity_block(int n) {
    Block b;
    b.n = n;
    b.tau = plain_triangulation(n);
    b.f = SimplicialMap::identity(b.tau.complex);
    b.symmetric = true;
    b.actions = b.tau.actions;
    b.name = "identity(" + std::to_string(n) + ")";
    return b;
}

/**
 * The two-dimensional block with a relative cohomology class of order
 * exactly p: the domain is the mapping cylinder of the p-fold circle cover,
 * its outer circle wraps around the boundary of the cone triangulation with
 * p * scale segments per edge, and the core circle collapses to the cone
 * point. The scale picks a finer target triangulation for the same block.
 */
inline Block pontryagin_block(long long p, int scale = 1) {
    if (p < 2) throw std::invalid_argument("pontryagin_block: p >= 2 required");
    if (scale < 1) throw std::invalid_argument("pontryagin_block: scale >= 1 required");
    const int q = static_cast<int>(p) * scale;

    Block b;
    b.n = 2;
    b.tau = cone_triangulation(q);
    const std::vector<int> walk = detail::boundary_walk(b.tau);
    const int apex = detail::interior_vertex(b.tau);

    const int outer = 3 * q, core = 3 * scale;
    ComplexPtr s = detail::polygon(outer);
    ComplexPtr t = detail::polygon(core);
    std::vector<int> cover(outer);
    for (int j = 0; j < outer; ++j) cover[j] = j % core;
    MappingCylinder cyl = mapping_cylinder(SimplicialMap(s, t, std::move(cover)));

    std::vector<int> vm(cyl.complex->vertex_count(), apex);
    for (int j = 0; j < outer; ++j) vm[cyl.include_domain(j)] = walk[j];
    b.f = SimplicialMap(cyl.complex, b.tau.complex, std::move(vm));
    b.symmetric = false;
    b.name = "pontryagin(" + std::to_string(p) +
             (scale > 1 ? ",scale=" + std::to_string(scale) : "") + ")";
    return b;
}

/// Barycentric refinement of the whole block: the triangulation, the domain
/// and the map subdivide together, and any group action lifts functorially.
inline Block block_refine(const Block& b) {
    Subdivision dom = barycentric_subdivision(b.f.domain());
    Subdivision cod = barycentric_subdivision(b.tau.complex);
    Block out;
    out.n = b.n;
    out.tau = barycentric_refine(b.tau, cod);
    out.f = subdivided_map(b.f, dom, cod);
    out.symmetric = b.symmetric;
    for (const auto& [perm, act] : b.actions) {
        std::vector<int> lifted(dom.carrier.size());
        for (std::size_t v = 0; v < dom.carrier.size(); ++v) {
            Simplex image;
            for (int u : dom.carrier[v]) image.push_back(act[u]);
            lifted[v] = dom.vertex_of.at(sorted_simplex(std::move(image)));
        }
        out.actions[perm] = std::move(lifted);
    }
    out.name = "refine(" + b.name + ")";
    return out;
}

/**
 * Equivariant hull: one copy of the domain per corner permutation, with the
 * map twisted by the action on the target. The permutation t carries the
 * copy at s identically onto the copy at t*s, which makes the twisted map
 * equivariant; the original block sits at the identity copy.
 */
inline Block symmetrize(const Block& b) {
    if (!b.tau.symmetric)
        throw std::invalid_argument("symmetrize: the triangulation carries no group action");
    const auto perms = detail::all_permutations(b.n + 1);
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;

    const ComplexPtr& l = b.f.domain();
    const int lv = l->vertex_count();
    std::vector<Simplex> gens;
    for (int c = 0; c < static_cast<int>(perms.size()); ++c)
        for (const Simplex& s : l->maximal_simplices()) {
            Simplex copy;
            for (int v : s) copy.push_back(c * lv + v);
            gens.push_back(std::move(copy));
        }
    ComplexPtr big = make_complex(SimplicialComplex::from_maximal(gens));

    std::vector<int> vm(perms.size() * lv);
    for (int c = 0; c < static_cast<int>(perms.size()); ++c) {
        const std::vector<int>& down = b.tau.actions.at(perms[c]);
        for (int v = 0; v < lv; ++v) vm[c * lv + v] = down[b.f(v)];
    }

    Block out;
    out.n = b.n;
    out.tau = b.tau;
    out.f = SimplicialMap(big, b.tau.complex, std::move(vm));
    out.symmetric = true;
    for (const auto& t : perms) {
        std::vector<int> act(perms.size() * lv);
        for (int c = 0; c < static_cast<int>(perms.size()); ++c) {
            std::vector<int> moved(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) moved[i] = t[perms[c][i]];
            const int target = index.at(moved);
            for (int v = 0; v < lv; ++v) act[c * lv + v] = target * lv + v;
        }
        out.actions[t] = std::move(act);
    }
    out.name = "symmetrize(" + b.name + ")";
    return out;
}

/**
 * Sum of blocks over a common corner face: the smaller target simplex is
 * matched onto the restriction of the larger triangulation to its first
 * face, refining either side until the two triangulations align, and the
 * domains are joined disjointly. The alignment is combinatorial, pinned at
 * the corners.
 */
inline Block block_sum(const Block& first, const Block& second) {
    if (first.n < second.n) return block_sum(second, first);
    std::vector<Block> as{first}, bs{second};
    for (int total = 0; total <= 6; ++total) {
        for (int ka = std::max(0, total - 3); ka <= std::min(3, total); ++ka) {
            const int kb = total - ka;
            while (static_cast<int>(as.size()) <= ka) as.push_back(block_refine(as.back()));
            while (static_cast<int>(bs.size()) <= kb) bs.push_back(block_refine(bs.back()));
            const Block& a = as[ka];
            const Block& b = bs[kb];

            std::vector<int> face(b.n + 1);
            std::iota(face.begin(), face.end(), 0);
            auto [restricted, old_id] = face_mask(a.tau, face).extract();
            if (restricted.vertex_count() != b.tau.complex->vertex_count()) continue;
            std::vector<int> new_id(a.tau.complex->vertex_count(), -1);
            for (int i = 0; i < static_cast<int>(old_id.size()); ++i) new_id[old_id[i]] = i;
            std::vector<std::pair<int, int>> pinned;
            for (int i = 0; i <= b.n; ++i)
                pinned.emplace_back(b.tau.corners[i], new_id[a.tau.corners[i]]);
            auto iso = find_isomorphism(*b.tau.complex, restricted, pinned);
            if (!iso) continue;

            const ComplexPtr& la = a.f.domain();
            const ComplexPtr& lb = b.f.domain();
            const int shift = la->vertex_count();
            std::vector<Simplex> gens = la->maximal_simplices();
            for (const Simplex& s : lb->maximal_simplices()) {
                Simplex moved;
                for (int v : s) moved.push_back(shift + v);
                gens.push_back(std::move(moved));
            }
            ComplexPtr dom = make_complex(SimplicialComplex::from_maximal(gens));
            std::vector<int> vm(shift + lb->vertex_count());
            for (int v = 0; v < shift; ++v) vm[v] = a.f(v);
            for (int v = 0; v < lb->vertex_count(); ++v)
                vm[shift + v] = old_id[(*iso)[b.f(v)]];

            Block out;
            out.n = a.n;
            out.tau = a.tau;
            out.f = SimplicialMap(dom, a.tau.complex, std::move(vm));
            out.symmetric = false;
            out.name = "sum(" + first.name + "," + second.name + ")";
            return out;
        }
    }
    throw std::runtime_error("block_sum: no face alignment within three refinements");
}

namespace detail {

/**
 * Proper coloring of the skeleton graph by the n+1 corner labels; on a pure
 * triangulation this is exactly a light simplicial collapse onto the plain
 * simplex, since the vertices of a cell are pairwise adjacent. Backtracking
 * over vertices in decreasing degree keeps the choice deterministic.
 */
inline std::optional<std::vector<int>> corner_index_map(const SymmetricTriangulation& t) {
    const int verts = t.complex->vertex_count();
    const auto adj = t.complex->skeleton_graph();
    std::vector<int> order(verts);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return adj[x].size() > adj[y].size(); });
    std::vector<int> color(verts, -1);
    std::function<bool(int)> place = [&](int at) -> bool {
        if (at == verts) return true;
        const int v = order[at];
        for (int c = 0; c <= t.n; ++c) {
            bool free = true;
            for (int u : adj[v])
                if (color[u] == c) {
                    free = false;
                    break;
                }
            if (!free) continue;
            color[v] = c;
            if (place(at + 1)) return true;
            color[v] = -1;
        }
        return false;
    };
    if (!place(0)) return std::nullopt;
    return color;
}

}  // namespace detail

/**
 * Product block over the sum of the target dimensions: the domain is the
 * staircase triangulation of the product of the domains, and each factor
 * reaches the plain target through a corner labeling of its triangulation.
 * A factor that is literally a point leaves the other factor unchanged.
 */
inline Block block_product(const Block& a, const Block& b) {
    auto is_point = [](const Block& x) {
        return x.n == 0 && x.f.domain()->vertex_count() == 1;
    };
    if (is_point(b) || is_point(a)) {
        Block out = is_point(b) ? a : b;
        out.name = "product(" + a.name + "," + b.name + ")";
        return out;
    }
    auto ia = detail::corner_index_map(a.tau);
    auto ib = detail::corner_index_map(b.tau);
    if (!ia || !ib)
        throw std::runtime_error("block_product: a target triangulation admits no corner labeling");
    StaircaseProduct sp = staircase_product(a.f.domain(), b.f.domain());

    Block out;
    out.n = a.n + b.n;
    out.tau = plain_triangulation(out.n);
    std::vector<int> vm(sp.complex->vertex_count());
    for (int v = 0; v < sp.complex->vertex_count(); ++v)
        vm[v] = (*ia)[a.f(sp.to_first(v))] + (*ib)[b.f(sp.to_second(v))];
    out.f = SimplicialMap(sp.complex, out.tau.complex, std::move(vm));
    out.symmetric = false;
    out.name = "product(" + a.name + "," + b.name + ")";
    return out;
}

}  // namespace markov

#endif
