#ifndef MARKOV_CYLINDER_HPP
#define MARKOV_CYLINDER_HPP

#include <vector>

#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"

namespace markov {

/**
 * Triangulated mapping cylinder of g : A -> B. Vertices are the A-vertices
 * (ids kept) followed by the B-vertices (shifted by |A|).
 */
struct MappingCylinder {
    ComplexPtr complex;
    SimplicialMap include_domain;   // A into the cylinder
    SimplicialMap include_target;   // B into the cylinder
    SimplicialMap retraction;       // cylinder onto B, the homotopy inverse
    SubcomplexMask domain_end;      // copy of A
    SubcomplexMask target_end;      // copy of B
};

/**
 * Prism triangulation: for a simplex {a_0 < ... < a_k} of A and a cut j, the
 * simplex {a_0, ..., a_j} u g({a_j, ..., a_k}) is in the cylinder. Works for
 * degenerate g, where the upper part collapses.
 */
inline MappingCylinder mapping_cylinder(const SimplicialMap& g) {
    const SimplicialComplex& a = *g.domain();
    const SimplicialComplex& b = *g.codomain();
    const int na = a.vertex_count();

    std::vector<Simplex> gens;
    for (const Simplex& s : b.maximal_simplices()) {
        Simplex shifted;
        for (int v : s) shifted.push_back(na + v);
        gens.push_back(shifted);
    }
    for (int d = 0; d <= a.dim(); ++d)
        for (const Simplex& s : a.simplices(d))
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex mixed(s.begin(), s.begin() + j + 1);
                for (std::size_t i = j; i < s.size(); ++i) mixed.push_back(na + g(s[i]));
                gens.push_back(sorted_simplex(std::move(mixed)));
            }

    MappingCylinder out;
    out.complex = make_complex(SimplicialComplex::from_maximal(gens));

    std::vector<int> inc_a(na), inc_b(b.vertex_count()), retr(na + b.vertex_count());
    for (int v = 0; v < na; ++v) {
        inc_a[v] = v;
        retr[v] = g(v);
    }
    for (int v = 0; v < b.vertex_count(); ++v) {
        inc_b[v] = na + v;
        retr[na + v] = v;
    }
    out.include_domain = SimplicialMap(g.domain(), out.complex, std::move(inc_a), false);
    out.include_target = SimplicialMap(g.codomain(), out.complex, std::move(inc_b), false);
    out.retraction = SimplicialMap(out.complex, g.codomain(), std::move(retr), false);

    out.domain_end = SubcomplexMask(out.complex);
    for (int d = 0; d <= a.dim(); ++d)
        for (const Simplex& s : a.simplices(d)) out.domain_end.insert(s);
    out.target_end = SubcomplexMask(out.complex);
    for (int d = 0; d <= b.dim(); ++d)
        for (const Simplex& s : b.simplices(d)) {
            Simplex shifted;
            for (int v : s) shifted.push_back(na + v);
            out.target_end.insert(shifted);
        }
    return out;
}

/**
 * Mapping cone: the cylinder with the domain end coned off by a fresh apex,
 * which becomes the last vertex.
 */
struct MappingCone {
    ComplexPtr complex;
    SimplicialMap include_target;
    int apex;
};

inline MappingCone mapping_cone(const SimplicialMap& g) {
    MappingCylinder cyl = mapping_cylinder(g);
    const int apex = cyl.complex->vertex_count();
    std::vector<Simplex> gens;
    for (const Simplex& s : cyl.complex->maximal_simplices()) gens.push_back(s);
    for (int d = 0; d <= g.domain()->dim(); ++d)
        for (const Simplex& s : g.domain()->simplices(d)) {
            Simplex coned = s;
            coned.push_back(apex);
            gens.push_back(coned);
        }
    MappingCone out;
    out.complex = make_complex(SimplicialComplex::from_maximal(gens));
    out.apex = apex;
    out.include_target =
        SimplicialMap(g.codomain(), out.complex, cyl.include_target.vertex_map(), false);
    return out;
}

}  // namespace markov

#endif
