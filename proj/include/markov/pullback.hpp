#ifndef MARKOV_PULLBACK_HPP
#define MARKOV_PULLBACK_HPP

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"

namespace markov {

/**
 * Fiber product of a light map and an arbitrary map with the same codomain.
 */
struct Pullback {
    ComplexPtr complex;
    SimplicialMap to_first;   // projection to the light side
    SimplicialMap to_second;  // projection to the other side
};

/**
 * Triangulated pullback of chi : K -> C (light) against f : L -> C.
 *
 * Vertices are compatible pairs (x, y) with chi(x) = f(y). For every pair of
 * simplices with the same exact image, sigma_K under chi and sigma_L under f,
 * injectivity of chi on sigma_K lifts sigma_L to a simplex of the pullback.
 * All image-matching pairs contribute; lifts over degenerate f-images are
 * genuine simplices whose first projection degenerates.
 */
inline Pullback pullback_along_light(const SimplicialMap& chi, const SimplicialMap& f,
                                     std::size_t max_simplices = 0) {
    if (*chi.codomain() != *f.codomain())
        throw std::invalid_argument("pullback: codomain mismatch");
    if (!chi.is_light())
        throw std::invalid_argument("pullback: first map must be light");
    const SimplicialComplex& k = *chi.domain();
    const SimplicialComplex& l = *f.domain();

    // Group K-simplices by their exact image.
    std::map<Simplex, std::vector<const Simplex*>> by_image;
    for (int d = 0; d <= k.dim(); ++d)
        for (const Simplex& s : k.simplices(d)) by_image[chi.image_simplex(s)].push_back(&s);

    // Dense ids for compatible vertex pairs, ordered lexicographically.
    std::map<std::pair<int, int>, int> pair_id;
    for (int x = 0; x < k.vertex_count(); ++x)
        for (int y = 0; y < l.vertex_count(); ++y)
            if (chi(x) == f(y)) {
                int id = static_cast<int>(pair_id.size());
                pair_id[{x, y}] = id;
            }

    std::vector<Simplex> gens;
    for (int d = 0; d <= l.dim(); ++d)
        for (const Simplex& sl : l.simplices(d)) {
            Simplex image = f.image_simplex(sl);
            auto bucket = by_image.find(image);
            if (bucket == by_image.end()) continue;
            for (const Simplex* sk : bucket->second) {
                // Lift: y pairs with the unique x in sigma_K over f(y).
                std::map<int, int> over;  // codomain vertex -> x
                for (int x : *sk) over[chi(x)] = x;
                Simplex lifted;
                for (int y : sl) lifted.push_back(pair_id.at({over.at(f(y)), y}));
                gens.push_back(sorted_simplex(std::move(lifted)));
            }
        }

    Pullback out;
    out.complex = make_complex(SimplicialComplex::from_maximal(gens, max_simplices));
    std::vector<int> first(pair_id.size()), second(pair_id.size());
    for (const auto& [xy, id] : pair_id) {
        first[id] = xy.first;
        second[id] = xy.second;
    }
    out.to_first = SimplicialMap(out.complex, chi.domain(), std::move(first), false);
    out.to_second = SimplicialMap(out.complex, f.domain(), std::move(second), false);
    return out;
}

}  // namespace markov

#endif
