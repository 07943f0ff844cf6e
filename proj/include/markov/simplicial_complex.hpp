#ifndef MARKOV_SIMPLICIAL_COMPLEX_HPP
#define MARKOV_SIMPLICIAL_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace markov {

/// Thrown when a construction would exceed its simplex budget.
struct BudgetExceeded : std::runtime_error {
    std::size_t attempted;
    explicit BudgetExceeded(std::size_t n)
        : std::runtime_error("simplex budget exceeded"), attempted(n) {}
};

/// Vertices of a simplex, sorted and distinct.
using Simplex = std::vector<int>;

inline Simplex sorted_simplex(Simplex s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// Union of the vertex sets of two simplices.
inline Simplex simplex_join(const Simplex& a, const Simplex& b) {
    Simplex out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool simplex_contains(const Simplex& big, const Simplex& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/**
 * Finite abstract simplicial complex on the dense vertex set {0, ..., V-1}.
 *
 * The complex stores every face, grouped by dimension and ordered
 * lexicographically, so simplex indices are reproducible. Instances are
 * immutable after construction.
 */
class SimplicialComplex {
public:
    /// Builds the face closure of the given simplices. Every vertex id in
    /// [0, max_id] must occur; constructions that drop vertices should
    /// renumber before calling. A nonzero max_size caps the total simplex
    /// count and throws BudgetExceeded beyond it.
    static SimplicialComplex from_maximal(const std::vector<Simplex>& generators,
                                          std::size_t max_size = 0) {
        SimplicialComplex k;
        std::set<Simplex> faces;
        int max_id = -1;
        for (const Simplex& g : generators) {
            Simplex s = sorted_simplex(g);
            if (s.empty()) throw std::invalid_argument("empty simplex");
            if (s.front() < 0) throw std::invalid_argument("negative vertex id");
            max_id = std::max(max_id, s.back());
            // All nonempty subsets.
            const std::size_t n = s.size();
            for (std::size_t mask = 1; mask < (1u << n); ++mask) {
                Simplex f;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask >> i & 1) f.push_back(s[i]);
                faces.insert(std::move(f));
            }
            if (max_size && faces.size() > max_size) throw BudgetExceeded(faces.size());
        }
        std::vector<bool> seen(max_id + 1, false);
        for (const Simplex& f : faces)
            if (f.size() == 1) seen[f[0]] = true;
        for (int v = 0; v <= max_id; ++v)
            if (!seen[v])
                throw std::invalid_argument("vertex ids are not dense: missing " +
                                            std::to_string(v));
        k.vertex_count_ = max_id + 1;
        for (const Simplex& f : faces) {
            int d = static_cast<int>(f.size()) - 1;
            if (d >= static_cast<int>(k.by_dim_.size())) k.by_dim_.resize(d + 1);
            k.by_dim_[d].push_back(f);
        }
        for (int d = 0; d < static_cast<int>(k.by_dim_.size()); ++d) {
            auto& v = k.by_dim_[d];
            std::sort(v.begin(), v.end());
            for (int i = 0; i < static_cast<int>(v.size()); ++i) k.index_[v[i]] = i;
        }
        k.compute_maximal();
        return k;
    }

    /// The full n-simplex on vertices {0, ..., n}.
    static SimplicialComplex full_simplex(int n) {
        Simplex top(n + 1);
        std::iota(top.begin(), top.end(), 0);
        return from_maximal({top});
    }

    /// The boundary of the full n-simplex; n >= 1.
    static SimplicialComplex boundary_of_simplex(int n) {
        if (n < 1) throw std::invalid_argument("boundary needs n >= 1");
        std::vector<Simplex> facets;
        for (int skip = 0; skip <= n; ++skip) {
            Simplex f;
            for (int v = 0; v <= n; ++v)
                if (v != skip) f.push_back(v);
            facets.push_back(f);
        }
        return from_maximal(facets);
    }

    int vertex_count() const { return vertex_count_; }
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& v : by_dim_) n += v.size();
        return n;
    }

    const std::vector<Simplex>& simplices(int d) const {
        static const std::vector<Simplex> empty;
        if (d < 0 || d > dim()) return empty;
        return by_dim_[d];
    }

    std::size_t count(int d) const { return simplices(d).size(); }

    bool contains(const Simplex& s) const { return index_.count(s) > 0; }

    /// Index of s within its dimension, or -1.
    int index_of(const Simplex& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? -1 : it->second;
    }

    const std::vector<Simplex>& maximal_simplices() const { return maximal_; }

    long long euler_characteristic() const {
        long long chi = 0;
        for (int d = 0; d <= dim(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(by_dim_[d].size());
        return chi;
    }

    /// Adjacency lists of the 1-skeleton.
    std::vector<std::vector<int>> skeleton_graph() const {
        std::vector<std::vector<int>> adj(vertex_count_);
        for (const Simplex& e : simplices(1)) {
            adj[e[0]].push_back(e[1]);
            adj[e[1]].push_back(e[0]);
        }
        return adj;
    }

    bool operator==(const SimplicialComplex& o) const { return by_dim_ == o.by_dim_; }
    bool operator!=(const SimplicialComplex& o) const { return !(*this == o); }

private:
    void compute_maximal() {
        std::set<Simplex> proper_faces;
        for (int d = 1; d <= dim(); ++d)
            for (const Simplex& s : by_dim_[d])
                for (std::size_t skip = 0; skip < s.size(); ++skip) {
                    Simplex f;
                    for (std::size_t i = 0; i < s.size(); ++i)
                        if (i != skip) f.push_back(s[i]);
                    proper_faces.insert(std::move(f));
                }
        for (int d = 0; d <= dim(); ++d)
            for (const Simplex& s : by_dim_[d])
                if (!proper_faces.count(s)) maximal_.push_back(s);
    }

    int vertex_count_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
    std::map<Simplex, int> index_;
    std::vector<Simplex> maximal_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr make_complex(SimplicialComplex k) {
    return std::make_shared<const SimplicialComplex>(std::move(k));
}

/**
 * Subcomplex of a fixed parent, stored as membership flags per dimension.
 * Intended for preimages and pair constructions; closedness is the caller's
 * responsibility and can be checked explicitly.
 */
class SubcomplexMask {
public:
    SubcomplexMask() = default;

    explicit SubcomplexMask(ComplexPtr parent) : parent_(std::move(parent)) {
        flags_.resize(parent_->dim() + 1);
        for (int d = 0; d <= parent_->dim(); ++d)
            flags_[d].assign(parent_->count(d), false);
    }

    static SubcomplexMask from_simplices(ComplexPtr parent,
                                         const std::vector<Simplex>& simplices) {
        SubcomplexMask m(std::move(parent));
        for (const Simplex& s : simplices) m.insert_with_faces(s);
        return m;
    }

    static SubcomplexMask full(ComplexPtr parent) {
        SubcomplexMask m(std::move(parent));
        for (auto& level : m.flags_) level.assign(level.size(), true);
        return m;
    }

    const ComplexPtr& parent() const { return parent_; }

    bool test(int d, int idx) const {
        return d >= 0 && d < static_cast<int>(flags_.size()) && flags_[d][idx];
    }

    bool contains(const Simplex& s) const {
        int idx = parent_->index_of(s);
        return idx >= 0 && test(static_cast<int>(s.size()) - 1, idx);
    }

    void insert(const Simplex& s) {
        int idx = parent_->index_of(s);
        if (idx < 0) throw std::invalid_argument("simplex not in parent complex");
        flags_[s.size() - 1][idx] = true;
    }

    void insert_with_faces(const Simplex& s) {
        const std::size_t n = s.size();
        for (std::size_t mask = 1; mask < (1u << n); ++mask) {
            Simplex f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) f.push_back(s[i]);
            insert(f);
        }
    }

    bool is_closed() const {
        for (int d = 1; d < static_cast<int>(flags_.size()); ++d)
            for (std::size_t i = 0; i < flags_[d].size(); ++i) {
                if (!flags_[d][i]) continue;
                const Simplex& s = parent_->simplices(d)[i];
                for (std::size_t skip = 0; skip < s.size(); ++skip) {
                    Simplex f;
                    for (std::size_t j = 0; j < s.size(); ++j)
                        if (j != skip) f.push_back(s[j]);
                    if (!contains(f)) return false;
                }
            }
        return true;
    }

    bool is_subset_of(const SubcomplexMask& other) const {
        for (int d = 0; d < static_cast<int>(flags_.size()); ++d)
            for (std::size_t i = 0; i < flags_[d].size(); ++i)
                if (flags_[d][i] && !other.flags_[d][i]) return false;
        return true;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& level : flags_)
            n += static_cast<std::size_t>(std::count(level.begin(), level.end(), true));
        return n;
    }

    bool empty() const { return size() == 0; }

    std::vector<Simplex> simplices() const {
        std::vector<Simplex> out;
        for (int d = 0; d < static_cast<int>(flags_.size()); ++d)
            for (std::size_t i = 0; i < flags_[d].size(); ++i)
                if (flags_[d][i]) out.push_back(parent_->simplices(d)[i]);
        return out;
    }

    /// Standalone copy with densely renumbered vertices; also reports the
    /// parent vertex id for each new vertex.
    std::pair<SimplicialComplex, std::vector<int>> extract() const {
        std::vector<int> new_id(parent_->vertex_count(), -1);
        std::vector<int> old_id;
        for (std::size_t i = 0; i < flags_[0].size(); ++i)
            if (flags_[0][i]) {
                int v = parent_->simplices(0)[i][0];
                new_id[v] = static_cast<int>(old_id.size());
                old_id.push_back(v);
            }
        std::vector<Simplex> gens;
        for (const Simplex& s : simplices()) {
            Simplex t;
            for (int v : s) {
                if (new_id[v] < 0) throw std::logic_error("mask is not closed");
                t.push_back(new_id[v]);
            }
            gens.push_back(sorted_simplex(t));
        }
        if (gens.empty()) return {SimplicialComplex(), old_id};
        return {SimplicialComplex::from_maximal(gens), old_id};
    }

private:
    ComplexPtr parent_;
    std::vector<std::vector<bool>> flags_;
};

}  // namespace markov

#endif
