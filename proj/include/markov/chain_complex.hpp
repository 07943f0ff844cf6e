#ifndef MARKOV_CHAIN_COMPLEX_HPP
#define MARKOV_CHAIN_COMPLEX_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "markov/int_matrix.hpp"
#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"

namespace markov {

/**
 * Simplicial chain complex of a pair (N, A) of closed subcomplexes of a
 * common parent, A possibly empty. Basis elements in degree d are the
 * d-simplices of N not in A, in the parent's ordering.
 */
class PairChainComplex {
public:
    PairChainComplex(SubcomplexMask total, SubcomplexMask rel)
        : total_(std::move(total)), rel_(std::move(rel)) {
        const ComplexPtr& parent = total_.parent();
        if (rel_.parent() != parent)
            throw std::invalid_argument("pair: different parent complexes");
        if (!rel_.is_subset_of(total_))
            throw std::invalid_argument("pair: A must be contained in N");
        dim_ = parent->dim();
        basis_.resize(dim_ + 1);
        position_.resize(dim_ + 1);
        for (int d = 0; d <= dim_; ++d) {
            const auto& level = parent->simplices(d);
            for (int i = 0; i < static_cast<int>(level.size()); ++i)
                if (total_.test(d, i) && !rel_.test(d, i)) {
                    position_[d][i] = static_cast<int>(basis_[d].size());
                    basis_[d].push_back(i);
                }
        }
        boundary_.resize(dim_ + 2);
        boundary_[0] = IntMatrix(0, rank(0));
        for (int d = 1; d <= dim_; ++d) {
            IntMatrix b(rank(d - 1), rank(d));
            for (int j = 0; j < rank(d); ++j) {
                const Simplex& s = parent->simplices(d)[basis_[d][j]];
                for (std::size_t skip = 0; skip < s.size(); ++skip) {
                    Simplex f;
                    for (std::size_t i = 0; i < s.size(); ++i)
                        if (i != skip) f.push_back(s[i]);
                    int fi = parent->index_of(f);
                    auto it = position_[d - 1].find(fi);
                    if (it == position_[d - 1].end()) continue;  // face lies in A
                    b.set(it->second, j, (skip % 2 == 0) ? 1 : -1);
                }
            }
            boundary_[d] = std::move(b);
        }
        boundary_[dim_ + 1] = IntMatrix(rank(dim_), 0);
        for (int d = 2; d <= dim_; ++d)
            if (!(boundary_[d - 1] * boundary_[d]).is_zero())
                throw std::logic_error("boundary squared is nonzero");
    }

    static PairChainComplex absolute(SubcomplexMask total) {
        SubcomplexMask empty(total.parent());
        return PairChainComplex(std::move(total), std::move(empty));
    }

    static PairChainComplex whole_complex(const ComplexPtr& k) {
        return absolute(SubcomplexMask::full(k));
    }

    const ComplexPtr& parent() const { return total_.parent(); }
    const SubcomplexMask& total() const { return total_; }
    const SubcomplexMask& relative_part() const { return rel_; }
    int dim() const { return dim_; }

    int rank(int d) const {
        return d < 0 || d > dim_ ? 0 : static_cast<int>(basis_[d].size());
    }

    /// Boundary C_d -> C_{d-1}; boundary(0) has no rows and boundary(dim+1)
    /// no columns, so kernel and image conventions work at the ends.
    const IntMatrix& boundary(int d) const {
        if (d < 0 || d > dim_ + 1) {
            static const IntMatrix empty(0, 0);
            return empty;
        }
        return boundary_[d];
    }

    /// Coboundary C^d -> C^{d+1} is the transpose of the boundary below it.
    IntMatrix coboundary(int d) const {
        if (d < 0 || d > dim_) return IntMatrix(0, 0);
        if (d == dim_) return IntMatrix(0, rank(dim_));
        return boundary_[d + 1].transpose();
    }

    /// Basis position of a parent simplex, or -1 when absent (in A or out).
    int position_of(int d, int parent_index) const {
        if (d < 0 || d > dim_) return -1;
        auto it = position_[d].find(parent_index);
        return it == position_[d].end() ? -1 : it->second;
    }

    const Simplex& basis_simplex(int d, int pos) const {
        return parent()->simplices(d)[basis_[d][pos]];
    }

    /// Parent-complex index of the basis simplex at a position.
    int basis_index(int d, int pos) const { return basis_[d][pos]; }

private:
    SubcomplexMask total_, rel_;
    int dim_ = 0;
    std::vector<std::vector<int>> basis_;
    std::vector<std::map<int, int>> position_;
    std::vector<IntMatrix> boundary_;
};

namespace detail {

inline int sort_sign(std::vector<int> v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) sign = -sign;
        }
    return sign;
}

}  // namespace detail

/**
 * Degree-d chain map C_d(X) -> C_d(Y) induced by a simplicial map f : X -> Y
 * respecting the pairs (it must carry the X pair into the Y pair). Simplices
 * with degenerate image contribute nothing; others carry the orientation
 * sign of the vertex image ordering.
 */
inline IntMatrix chain_map_matrix(const SimplicialMap& f, const PairChainComplex& x,
                                  const PairChainComplex& y, int d) {
    if (x.parent() != f.domain() || y.parent() != f.codomain())
        throw std::invalid_argument("chain_map_matrix: complex mismatch");
    IntMatrix m(y.rank(d), x.rank(d));
    for (int j = 0; j < x.rank(d); ++j) {
        const Simplex& s = x.basis_simplex(d, j);
        std::vector<int> image;
        for (int v : s) image.push_back(f(v));
        int sign = detail::sort_sign(image);
        if (sign == 0) continue;
        Simplex t = sorted_simplex(image);
        int pos = y.position_of(d, y.parent()->index_of(t));
        if (pos < 0) continue;  // lands in the relative part
        m.add_to(pos, j, sign);
    }
    return m;
}

/// Cochain pullback C^d(Y) -> C^d(X): the transpose of the chain map.
inline IntMatrix cochain_map_matrix(const SimplicialMap& f, const PairChainComplex& x,
                                    const PairChainComplex& y, int d) {
    return chain_map_matrix(f, x, y, d).transpose();
}

/**
 * Degree-d chain map of an inclusion of pairs over one parent complex. Basis
 * simplices of the smaller pair that survive into the larger pair map to
 * themselves; the rest (absorbed by the larger relative part) map to zero.
 */
inline IntMatrix inclusion_chain_matrix(const PairChainComplex& sub,
                                        const PairChainComplex& super, int d) {
    if (sub.parent() != super.parent())
        throw std::invalid_argument("inclusion_chain_matrix: different parents");
    IntMatrix m(super.rank(d), sub.rank(d));
    for (int j = 0; j < sub.rank(d); ++j) {
        int pos = super.position_of(d, sub.basis_index(d, j));
        if (pos >= 0) m.add_to(pos, j, 1);
    }
    return m;
}

}  // namespace markov

#endif
