#ifndef MARKOV_SMITH_HPP
#define MARKOV_SMITH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "markov/int_matrix.hpp"

namespace markov {

/**
 * Smith normal form U * A * V = D.
 *
 * D is diagonal with nonnegative entries d_0 | d_1 | ... ; `divisors` lists
 * the nonzero ones. U and V are unimodular and present only when requested.
 */
struct SmithResult {
    IntMatrix D;
    int rank = 0;
    std::vector<BigInt> divisors;
    bool has_transforms = false;
    IntMatrix U, V;
};

namespace detail {

inline BigInt rounded_quotient(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    BigInt r = a - q * b;
    if (2 * abs(r) > abs(b)) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

class SmithWorker {
public:
    SmithWorker(const IntMatrix& a, bool transforms)
        : rows_(a.rows()), cols_(a.cols()), transforms_(transforms) {
        m_.assign(rows_, std::vector<BigInt>(cols_, 0));
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : a.row(r)) m_[r][c] = v;
        if (transforms_) {
            u_.assign(rows_, std::vector<BigInt>(rows_, 0));
            v_.assign(cols_, std::vector<BigInt>(cols_, 0));
            for (int i = 0; i < rows_; ++i) u_[i][i] = 1;
            for (int i = 0; i < cols_; ++i) v_[i][i] = 1;
        }
    }

    SmithResult run(bool rank_only = false) {
        int t = diagonalize();
        if (!rank_only) enforce_divisor_chain(t);
        SmithResult out;
        out.rank = t;
        out.D = IntMatrix(rows_, cols_);
        for (int i = 0; i < t; ++i) {
            if (m_[i][i] < 0) negate_row(i);
            out.D.set(i, i, m_[i][i]);
            out.divisors.push_back(m_[i][i]);
        }
        if (transforms_) {
            out.has_transforms = true;
            out.U = to_matrix(u_);
            out.V = to_matrix(v_);
        }
        return out;
    }

private:
    int diagonalize() {
        int t = 0;
        while (true) {
            auto pivot = find_pivot(t);
            if (!pivot) return t;
            auto [pr, pc] = *pivot;
            swap_rows(t, pr);
            swap_cols(t, pc);
            clear_position(t);
            ++t;
        }
    }

    // Smallest nonzero entry of the active submatrix keeps quotients short.
    std::optional<std::pair<int, int>> find_pivot(int t) const {
        std::optional<std::pair<int, int>> best;
        BigInt best_abs;
        for (int r = t; r < rows_; ++r)
            for (int c = t; c < cols_; ++c) {
                if (m_[r][c] == 0) continue;
                BigInt a = abs(m_[r][c]);
                if (!best || a < best_abs) {
                    best = {r, c};
                    best_abs = a;
                    if (best_abs == 1) return best;
                }
            }
        return best;
    }

    void clear_position(int t) {
        while (true) {
            bool col_clean = true;
            for (int r = t + 1; r < rows_; ++r) {
                if (m_[r][t] == 0) continue;
                BigInt q = rounded_quotient(m_[r][t], m_[t][t]);
                if (q != 0) add_row_multiple(r, t, -q);
                if (m_[r][t] != 0) {
                    swap_rows(t, r);
                    col_clean = false;
                }
            }
            if (!col_clean) continue;
            bool row_clean = true;
            for (int c = t + 1; c < cols_; ++c) {
                if (m_[t][c] == 0) continue;
                BigInt q = rounded_quotient(m_[t][c], m_[t][t]);
                if (q != 0) add_col_multiple(c, t, -q);
                if (m_[t][c] != 0) {
                    swap_cols(t, c);
                    row_clean = false;
                }
            }
            if (row_clean) {
                for (int r = t + 1; r < rows_; ++r)
                    if (m_[r][t] != 0) { row_clean = false; break; }
            }
            if (row_clean) return;
        }
    }

    void enforce_divisor_chain(int rank) {
        for (int i = 0; i + 1 < rank; ++i) {
            for (int j = i + 1; j < rank; ++j) {
                if (m_[i][i] != 0 && m_[j][j] % m_[i][i] == 0) continue;
                // Fold d_j into column i, then restore the diagonal; the new
                // d_i is gcd(d_i, d_j), so each pass strictly shrinks d_i.
                add_col_multiple(i, j, 1);
                clear_position(i);
                for (int k = i + 1; k < rank; ++k)
                    if (m_[k][k] == 0) clear_position(k);
                j = i;  // re-scan with the new d_i
            }
        }
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        std::swap(m_[a], m_[b]);
        if (transforms_) std::swap(u_[a], u_[b]);
    }

    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int r = 0; r < rows_; ++r) std::swap(m_[r][a], m_[r][b]);
        if (transforms_)
            for (int r = 0; r < cols_; ++r) std::swap(v_[r][a], v_[r][b]);
    }

    void add_row_multiple(int dst, int src, const BigInt& q) {
        for (int c = 0; c < cols_; ++c)
            if (m_[src][c] != 0) m_[dst][c] += q * m_[src][c];
        if (transforms_)
            for (int c = 0; c < rows_; ++c)
                if (u_[src][c] != 0) u_[dst][c] += q * u_[src][c];
    }

    void add_col_multiple(int dst, int src, const BigInt& q) {
        for (int r = 0; r < rows_; ++r)
            if (m_[r][src] != 0) m_[r][dst] += q * m_[r][src];
        if (transforms_)
            for (int r = 0; r < cols_; ++r)
                if (v_[r][src] != 0) v_[r][dst] += q * v_[r][src];
    }

    void negate_row(int r) {
        for (int c = 0; c < cols_; ++c) m_[r][c] = -m_[r][c];
        if (transforms_)
            for (int c = 0; c < rows_; ++c) u_[r][c] = -u_[r][c];
    }

    static IntMatrix to_matrix(const std::vector<std::vector<BigInt>>& d) {
        IntMatrix out(static_cast<int>(d.size()),
                      d.empty() ? 0 : static_cast<int>(d[0].size()));
        for (int r = 0; r < out.rows(); ++r)
            for (int c = 0; c < out.cols(); ++c)
                if (d[r][c] != 0) out.set(r, c, d[r][c]);
        return out;
    }

    int rows_, cols_;
    bool transforms_;
    std::vector<std::vector<BigInt>> m_, u_, v_;
};

}  // namespace detail

inline SmithResult smith_normal_form(const IntMatrix& a, bool with_transforms = true) {
    return detail::SmithWorker(a, with_transforms).run();
}

inline int integer_rank(const IntMatrix& a) {
    return detail::SmithWorker(a, false).run(true).rank;
}

/// Columns form a lattice basis of { x : A x = 0 }; the basis is primitive
/// because it consists of columns of a unimodular matrix.
inline IntMatrix kernel_lattice_basis(const IntMatrix& a) {
    if (a.cols() == 0) return IntMatrix(0, 0);
    if (a.rows() == 0) return IntMatrix::identity(a.cols());
    SmithResult s = smith_normal_form(a, true);
    std::vector<int> free_cols;
    for (int j = 0; j < a.cols(); ++j)
        if (j >= s.rank || s.D.at(j, j) == 0) free_cols.push_back(j);
    return s.V.submatrix_columns(free_cols);
}

/// One integral solution of A x = b, if any exists.
inline std::optional<std::vector<BigInt>> solve_integer(const SmithResult& s,
                                                        const std::vector<BigInt>& b) {
    const int rows = s.U.rows(), cols = s.V.rows();
    std::vector<BigInt> ub = s.U.apply(b);
    std::vector<BigInt> y(cols, 0);
    for (int i = 0; i < rows; ++i) {
        if (i < s.rank) {
            if (ub[i] % s.divisors[i] != 0) return std::nullopt;
            y[i] = ub[i] / s.divisors[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

inline std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& a,
                                                        const std::vector<BigInt>& b) {
    return solve_integer(smith_normal_form(a, true), b);
}

/// One integral solution X of A X = B, if any exists.
inline std::optional<IntMatrix> solve_integer_matrix(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve_integer_matrix: row mismatch");
    SmithResult s = smith_normal_form(a, true);
    IntMatrix x(a.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        auto col = solve_integer(s, b.column_vector(j));
        if (!col) return std::nullopt;
        x.set_column(j, *col);
    }
    return x;
}

inline BigInt determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
    const int n = a.rows();
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
    for (int r = 0; r < n; ++r)
        for (const auto& [c, v] : a.row(r)) m[r][c] = v;
    // Bareiss fraction-free elimination.
    BigInt sign = 1, prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { swap_row = r; break; }
            if (swap_row < 0) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r)
            for (int c = k + 1; c < n; ++c)
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Dense elimination over prime fields.

namespace detail {

inline std::vector<std::vector<std::uint64_t>> reduce_mod_p(const IntMatrix& a, long long p) {
    if (p < 2 || p >= (1LL << 31))
        throw std::invalid_argument("prime field characteristic out of range");
    std::vector<std::vector<std::uint64_t>> m(a.rows(),
                                              std::vector<std::uint64_t>(a.cols(), 0));
    for (int r = 0; r < a.rows(); ++r)
        for (const auto& [c, v] : a.row(r)) {
            BigInt red = v % p;
            if (red < 0) red += p;
            m[r][c] = static_cast<std::uint64_t>(red);
        }
    return m;
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// Packed rows over F_2.
class BitMatrix {
public:
    BitMatrix(const IntMatrix& a)
        : rows_(a.rows()), cols_(a.cols()), words_((cols_ + 63) / 64),
          data_(static_cast<std::size_t>(rows_) * words_, 0) {
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : a.row(r))
                if (v % 2 != 0) data_[static_cast<std::size_t>(r) * words_ + c / 64] ^=
                    1ULL << (c % 64);
    }

    int rank() {
        int rank = 0;
        for (int c = 0; c < cols_ && rank < rows_; ++c) {
            int pivot = -1;
            for (int r = rank; r < rows_; ++r)
                if (get(r, c)) { pivot = r; break; }
            if (pivot < 0) continue;
            swap_rows(rank, pivot);
            for (int r = rank + 1; r < rows_; ++r)
                if (get(r, c)) xor_rows(r, rank);
            ++rank;
        }
        return rank;
    }

private:
    bool get(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64) & 1;
    }
    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int w = 0; w < words_; ++w)
            std::swap(data_[static_cast<std::size_t>(a) * words_ + w],
                      data_[static_cast<std::size_t>(b) * words_ + w]);
    }
    void xor_rows(int dst, int src) {
        for (int w = 0; w < words_; ++w)
            data_[static_cast<std::size_t>(dst) * words_ + w] ^=
                data_[static_cast<std::size_t>(src) * words_ + w];
    }

    int rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
};

}  // namespace detail

inline int rank_mod_p(const IntMatrix& a, long long p) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    if (p == 2) return detail::BitMatrix(a).rank();
    auto m = detail::reduce_mod_p(a, p);
    const std::uint64_t up = static_cast<std::uint64_t>(p);
    const int rows = a.rows(), cols = a.cols();
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        std::uint64_t inv = detail::inv_mod(m[rank][c], up);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            std::uint64_t f = m[r][c] * inv % up;
            for (int k = c; k < cols; ++k)
                m[r][k] = (m[r][k] + (up - f) * m[rank][k]) % up;
        }
        ++rank;
    }
    return rank;
}

/// Rank over the rationals. Integer elimination is exact, so this is just the
/// free rank of the column lattice.
inline int rank_over_q(const IntMatrix& a) { return integer_rank(a); }

/// Basis of the nullspace over F_p; columns have entries in [0, p).
inline IntMatrix nullspace_mod_p(const IntMatrix& a, long long p) {
    const int rows = a.rows(), cols = a.cols();
    if (cols == 0) return IntMatrix(0, 0);
    auto m = detail::reduce_mod_p(a, p);
    const std::uint64_t up = static_cast<std::uint64_t>(p);
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        std::uint64_t inv = detail::inv_mod(m[rank][c], up);
        for (int k = c; k < cols; ++k) m[rank][k] = m[rank][k] * inv % up;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            std::uint64_t f = m[r][c];
            for (int k = c; k < cols; ++k)
                m[r][k] = (m[r][k] + (up - f) * m[rank][k]) % up;
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    IntMatrix out(cols, cols - rank);
    int j = 0;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        out.set(c, j, 1);
        for (int i = 0; i < rank; ++i)
            if (m[i][c] != 0) out.set(pivot_col[i], j, (up - m[i][c]) % up);
        ++j;
    }
    return out;
}


}  // namespace markov

#endif
