#ifndef MARKOV_SIMPLICIAL_MAP_HPP
#define MARKOV_SIMPLICIAL_MAP_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "markov/simplicial_complex.hpp"

namespace markov {

/**
 * Simplicial map between complexes, given on vertices. Images of simplices
 * may degenerate (distinct vertices may share an image); the image of a
 * simplex is its deduplicated vertex image.
 */
class SimplicialMap {
public:
    SimplicialMap() = default;

    SimplicialMap(ComplexPtr domain, ComplexPtr codomain, std::vector<int> vertex_map,
                  bool verify = true)
        : domain_(std::move(domain)), codomain_(std::move(codomain)),
          vertex_map_(std::move(vertex_map)) {
        if (static_cast<int>(vertex_map_.size()) != domain_->vertex_count())
            throw std::invalid_argument("vertex map has wrong length");
        for (int v : vertex_map_)
            if (v < 0 || v >= codomain_->vertex_count())
                throw std::invalid_argument("vertex image out of range");
        if (verify) {
            for (const Simplex& s : domain_->maximal_simplices())
                if (!codomain_->contains(image_simplex(s)))
                    throw std::invalid_argument("simplex image missing from codomain");
        }
    }

    static SimplicialMap identity(const ComplexPtr& k) {
        std::vector<int> id(k->vertex_count());
        for (int v = 0; v < k->vertex_count(); ++v) id[v] = v;
        return SimplicialMap(k, k, std::move(id), false);
    }

    const ComplexPtr& domain() const { return domain_; }
    const ComplexPtr& codomain() const { return codomain_; }
    const std::vector<int>& vertex_map() const { return vertex_map_; }

    int operator()(int vertex) const { return vertex_map_.at(vertex); }

    Simplex image_simplex(const Simplex& s) const {
        Simplex out;
        out.reserve(s.size());
        for (int v : s) out.push_back(vertex_map_[v]);
        return sorted_simplex(std::move(out));
    }

    /// No simplex degenerates, checked on maximal simplices.
    bool is_light() const {
        for (const Simplex& s : domain_->maximal_simplices()) {
            Simplex img;
            for (int v : s) img.push_back(vertex_map_[v]);
            std::sort(img.begin(), img.end());
            if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
        }
        return true;
    }

    bool is_identity_map() const {
        if (*domain_ != *codomain_) return false;
        for (int v = 0; v < domain_->vertex_count(); ++v)
            if (vertex_map_[v] != v) return false;
        return true;
    }

    friend SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
        if (*f.codomain() != *g.domain())
            throw std::invalid_argument("compose: domain mismatch");
        std::vector<int> vm(f.domain()->vertex_count());
        for (int v = 0; v < f.domain()->vertex_count(); ++v) vm[v] = g(f(v));
        return SimplicialMap(f.domain(), g.codomain(), std::move(vm), false);
    }

    bool operator==(const SimplicialMap& o) const {
        return *domain_ == *o.domain_ && *codomain_ == *o.codomain_ &&
               vertex_map_ == o.vertex_map_;
    }

private:
    ComplexPtr domain_, codomain_;
    std::vector<int> vertex_map_;
};

/// Preimage of a closed subcomplex: all simplices whose image lies in it.
inline SubcomplexMask preimage_mask(const SimplicialMap& f, const SubcomplexMask& target) {
    SubcomplexMask out(f.domain());
    for (int d = 0; d <= f.domain()->dim(); ++d) {
        const auto& level = f.domain()->simplices(d);
        for (std::size_t i = 0; i < level.size(); ++i)
            if (target.contains(f.image_simplex(level[i])))
                out.insert(level[i]);
    }
    return out;
}

/**
 * Searches for a simplicial isomorphism A -> B extending the given partial
 * vertex assignment. Backtracking over vertices ordered by constraint
 * signatures; returns the full vertex map or nothing.
 */
inline std::optional<std::vector<int>> find_isomorphism(
    const SimplicialComplex& a, const SimplicialComplex& b,
    const std::vector<std::pair<int, int>>& pinned = {},
    std::size_t node_budget = 2000000) {
    if (a.vertex_count() != b.vertex_count() || a.dim() != b.dim()) return std::nullopt;
    for (int d = 0; d <= a.dim(); ++d)
        if (a.count(d) != b.count(d)) return std::nullopt;

    const int n = a.vertex_count();
    // Signature: per dimension, the number of simplices containing the vertex.
    auto signatures = [](const SimplicialComplex& k) {
        std::vector<std::vector<int>> sig(k.vertex_count(),
                                          std::vector<int>(k.dim() + 1, 0));
        for (int d = 0; d <= k.dim(); ++d)
            for (const Simplex& s : k.simplices(d))
                for (int v : s) ++sig[v][d];
        return sig;
    };
    auto sig_a = signatures(a), sig_b = signatures(b);

    std::vector<int> map(n, -1), used(b.vertex_count(), 0);
    for (auto [va, vb] : pinned) {
        if (sig_a[va] != sig_b[vb]) return std::nullopt;
        map[va] = vb;
        used[vb] = 1;
    }

    // Assign constrained vertices first: fewer candidates, earlier pruning.
    std::vector<int> order;
    for (int v = 0; v < n; ++v)
        if (map[v] < 0) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return sig_a[x] > sig_a[y];
    });

    // Incremental consistency: edges (and their absence) must be preserved.
    std::vector<std::vector<bool>> adj_a(n, std::vector<bool>(n, false));
    std::vector<std::vector<bool>> adj_b(n, std::vector<bool>(n, false));
    for (const Simplex& e : a.simplices(1)) adj_a[e[0]][e[1]] = adj_a[e[1]][e[0]] = true;
    for (const Simplex& e : b.simplices(1)) adj_b[e[0]][e[1]] = adj_b[e[1]][e[0]] = true;

    std::size_t nodes = 0;
    std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
        if (++nodes > node_budget)
            throw std::runtime_error("isomorphism search budget exceeded");
        if (pos == order.size()) {
            for (const Simplex& s : a.maximal_simplices()) {
                Simplex img;
                for (int v : s) img.push_back(map[v]);
                if (!b.contains(sorted_simplex(std::move(img)))) return false;
            }
            return true;
        }
        int v = order[pos];
        for (int w = 0; w < n; ++w) {
            if (used[w] || sig_a[v] != sig_b[w]) continue;
            bool ok = true;
            for (int u = 0; u < n && ok; ++u)
                if (map[u] >= 0 && adj_a[v][u] != adj_b[w][map[u]]) ok = false;
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            if (rec(pos + 1)) return true;
            map[v] = -1;
            used[w] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return map;
}

}  // namespace markov

#endif
