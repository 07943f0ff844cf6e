#ifndef MARKOV_INT_MATRIX_HPP
#define MARKOV_INT_MATRIX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace markov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/**
 * Arbitrary-precision integer matrix with sparse row storage.
 *
 * Entries default to zero; only nonzero entries are stored. All mutating
 * operations keep that invariant. Row and column indices are 0-based.
 */
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}

    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("IntMatrix: negative dimension");
    }

    IntMatrix(std::initializer_list<std::initializer_list<long long>> init)
        : rows_(static_cast<int>(init.size())), cols_(0), data_(init.size()) {
        int r = 0;
        for (const auto& row : init) {
            if (r == 0) cols_ = static_cast<int>(row.size());
            if (static_cast<int>(row.size()) != cols_)
                throw std::invalid_argument("IntMatrix: ragged initializer");
            int c = 0;
            for (long long v : row) {
                if (v != 0) data_[r][c] = v;
                ++c;
            }
            ++r;
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i][i] = 1;
        return m;
    }

    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const BigInt& at(int r, int c) const {
        check(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? zero_ : it->second;
    }

    void set(int r, int c, BigInt v) {
        check(r, c);
        if (v == 0)
            data_[r].erase(c);
        else
            data_[r][c] = std::move(v);
    }

    void add_to(int r, int c, const BigInt& v) {
        if (v == 0) return;
        check(r, c);
        auto it = data_[r].find(c);
        if (it == data_[r].end()) {
            data_[r][c] = v;
        } else {
            it->second += v;
            if (it->second == 0) data_[r].erase(it);
        }
    }

    /// Sparse view of one row: ordered (column, value) pairs.
    const std::map<int, BigInt>& row(int r) const {
        if (r < 0 || r >= rows_) throw std::out_of_range("IntMatrix::row");
        return data_[r];
    }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    std::size_t nonzero_count() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) t.data_[c][r] = v;
        return t;
    }

    IntMatrix operator*(const IntMatrix& other) const {
        if (cols_ != other.rows_)
            throw std::invalid_argument("IntMatrix: size mismatch in product");
        IntMatrix out(rows_, other.cols_);
        for (int r = 0; r < rows_; ++r) {
            std::map<int, BigInt> acc;
            for (const auto& [k, v] : data_[r])
                for (const auto& [c, w] : other.data_[k]) acc[c] += v * w;
            for (auto& [c, v] : acc)
                if (v != 0) out.data_[r].emplace(c, std::move(v));
        }
        return out;
    }

    IntMatrix operator-(const IntMatrix& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument("IntMatrix: size mismatch in difference");
        IntMatrix out = *this;
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : other.data_[r]) out.add_to(r, c, -v);
        return out;
    }

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

    std::vector<BigInt> column_vector(int c) const {
        std::vector<BigInt> out(rows_);
        for (int r = 0; r < rows_; ++r) out[r] = at(r, c);
        return out;
    }

    void set_column(int c, const std::vector<BigInt>& v) {
        if (static_cast<int>(v.size()) != rows_)
            throw std::invalid_argument("IntMatrix::set_column: size mismatch");
        for (int r = 0; r < rows_; ++r) set(r, c, v[r]);
    }

    std::vector<BigInt> apply(const std::vector<BigInt>& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw std::invalid_argument("IntMatrix::apply: size mismatch");
        std::vector<BigInt> out(rows_, 0);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) out[r] += v * x[c];
        return out;
    }

    /// Horizontal concatenation [this | other].
    IntMatrix hstack(const IntMatrix& other) const {
        if (rows_ != other.rows_)
            throw std::invalid_argument("IntMatrix::hstack: row mismatch");
        IntMatrix out(rows_, cols_ + other.cols_);
        for (int r = 0; r < rows_; ++r) {
            out.data_[r] = data_[r];
            for (const auto& [c, v] : other.data_[r]) out.data_[r][cols_ + c] = v;
        }
        return out;
    }

    /// Vertical concatenation [this ; other].
    IntMatrix vstack(const IntMatrix& other) const {
        if (cols_ != other.cols_)
            throw std::invalid_argument("IntMatrix::vstack: column mismatch");
        IntMatrix out(rows_ + other.rows_, cols_);
        for (int r = 0; r < rows_; ++r) out.data_[r] = data_[r];
        for (int r = 0; r < other.rows_; ++r) out.data_[rows_ + r] = other.data_[r];
        return out;
    }

    IntMatrix submatrix_columns(const std::vector<int>& cols) const {
        IntMatrix out(rows_, static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j)
            out.set_column(j, column_vector(cols[j]));
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (int r = 0; r < rows_; ++r) {
            s += "[";
            for (int c = 0; c < cols_; ++c) {
                if (c) s += " ";
                s += at(r, c).str();
            }
            s += "]\n";
        }
        return s;
    }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("IntMatrix index (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") for " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_));
    }

    int rows_, cols_;
    std::vector<std::map<int, BigInt>> data_;
    inline static const BigInt zero_ = 0;
};

}  // namespace markov

#endif
