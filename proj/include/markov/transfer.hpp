#ifndef MARKOV_TRANSFER_HPP
#define MARKOV_TRANSFER_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "markov/chain_complex.hpp"
#include "markov/coefficients.hpp"
#include "markov/simplicial_map.hpp"
#include "markov/smith.hpp"
#include "markov/triangulation.hpp"

namespace markov {

/**
 * A relative n-chain z of (L, f^{-1}(boundary)) with f_#(z) equal to the
 * fundamental cycle of the triangulated n-simplex. Entries index the basis of
 * the relative chain group; over F_p they are residue representatives.
 */
struct TransferWitness {
    std::vector<Rational> chain;
    SubcomplexMask boundary_support;  // f^{-1} of the boundary, in the domain
    CoefficientSpec coeff;
    int degree = 0;
};

namespace detail {

inline std::optional<std::vector<BigInt>> solve_mod_p(const IntMatrix& a,
                                                      const std::vector<BigInt>& b,
                                                      long long p) {
    const int rows = a.rows(), cols = a.cols();
    std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j)
            m[i][j] = static_cast<long long>(((a.at(i, j) % p) + p) % p);
        m[i][cols] = static_cast<long long>(((b[i] % p) + p) % p);
    }
    auto inv_mod = [p](long long x) {
        long long r = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        long long inv = inv_mod(m[rank][c]);
        for (int k = c; k <= cols; ++k) m[rank][k] = m[rank][k] * inv % p;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            long long f = m[r][c];
            for (int k = c; k <= cols; ++k)
                m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (m[r][cols] != 0) return std::nullopt;
    std::vector<BigInt> x(cols, 0);
    for (int i = 0; i < rank; ++i) x[pivot_col[i]] = m[i][cols];
    return x;
}

inline std::optional<std::vector<Rational>> solve_over_q(const IntMatrix& a,
                                                         const std::vector<BigInt>& b) {
    SmithResult s = smith_normal_form(a, true);
    std::vector<BigInt> c = s.U.apply(b);
    std::vector<Rational> y(a.cols(), 0);
    for (int i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            y[i] = Rational(c[i], s.divisors[i]);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Rational> x(a.cols(), 0);
    for (int i = 0; i < a.cols(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (s.V.at(i, j) != 0) x[i] += Rational(s.V.at(i, j)) * y[j];
    return x;
}

}  // namespace detail

/**
 * Searches for a relative n-cycle of (L, f^{-1}(boundary)) that f carries to
 * the fundamental cycle of tau, over Z, Q or F_p. Both defining equations are
 * re-checked on the solution before it is returned.
 */
inline std::optional<TransferWitness> transfer_witness(const SimplicialMap& f,
                                                       const SymmetricTriangulation& tau,
                                                       const CoefficientSpec& r) {
    if (r.kind != CoeffKind::Integers && r.kind != CoeffKind::Rationals &&
        r.kind != CoeffKind::PrimeField)
        throw std::invalid_argument("transfer_witness: coefficients must be Z, Q or F_p");
    if (f.codomain() != tau.complex)
        throw std::invalid_argument("transfer_witness: map does not land in tau");
    const int n = tau.n;

    std::vector<int> whole(n + 1);
    for (int i = 0; i <= n; ++i) whole[i] = i;
    SubcomplexMask target_boundary = boundary_face_mask(tau, whole);
    SubcomplexMask source_boundary = preimage_mask(f, target_boundary);

    PairChainComplex source(SubcomplexMask::full(f.domain()), source_boundary);
    PairChainComplex target(SubcomplexMask::full(tau.complex), target_boundary);

    std::vector<BigInt> fund(target.rank(n), 0);
    for (const auto& [cell, sign] : fundamental_cycle(tau, whole))
        fund[target.position_of(n, cell)] = sign;

    IntMatrix system = chain_map_matrix(f, source, target, n).vstack(source.boundary(n));
    std::vector<BigInt> rhs = fund;
    rhs.resize(system.rows(), 0);

    std::vector<Rational> chain;
    if (r.kind == CoeffKind::Rationals) {
        auto x = detail::solve_over_q(system, rhs);
        if (!x) return std::nullopt;
        chain = std::move(*x);
    } else if (r.kind == CoeffKind::Integers) {
        auto x = solve_integer(system, rhs);
        if (!x) return std::nullopt;
        chain.assign(x->begin(), x->end());
    } else {
        auto x = detail::solve_mod_p(system, rhs, r.p);
        if (!x) return std::nullopt;
        chain.assign(x->begin(), x->end());
    }

    for (int i = 0; i < system.rows(); ++i) {
        Rational acc = 0;
        for (int j = 0; j < system.cols(); ++j)
            if (system.at(i, j) != 0) acc += Rational(system.at(i, j)) * chain[j];
        Rational diff = acc - Rational(rhs[i]);
        bool good = r.kind == CoeffKind::PrimeField
                        ? denominator(diff) == 1 && numerator(diff) % r.p == 0
                        : diff == 0;
        if (!good) throw std::logic_error("transfer_witness: solution fails re-substitution");
    }

    return TransferWitness{std::move(chain), std::move(source_boundary), r, n};
}

}  // namespace markov

#endif
