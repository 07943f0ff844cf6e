#ifndef MARKOV_ABELIAN_HPP
#define MARKOV_ABELIAN_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "markov/coefficients.hpp"
#include "markov/int_matrix.hpp"
#include "markov/smith.hpp"

namespace markov {

// ---------------------------------------------------------------------------
// Integer factorization. Orders of torsion classes are small in practice, but
// the engine must not silently fail on a large one, hence rho as a fallback.

namespace detail {

inline bool miller_rabin(const BigInt& n, const BigInt& a) {
    if (n % a == 0) return n == a;
    BigInt d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    BigInt x = powm(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

inline bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic for n < 3.3e24 with these witnesses.
    for (long long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!miller_rabin(n, a)) return false;
    return true;
}

inline BigInt pollard_rho(const BigInt& n) {
    if (n % 2 == 0) return 2;
    BigInt x = 2, y = 2, c = 1;
    while (true) {
        x = 2;
        y = 2;
        BigInt d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
        c += 1;
    }
}

inline void factor_into(BigInt n, std::map<BigInt, int>& out) {
    if (n <= 1) return;
    for (long long d = 2; d < 100000 && BigInt(d) * d <= n; ++d)
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    BigInt f = pollard_rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

}  // namespace detail

/// Prime factorization of |n|, sorted by prime. Requires n != 0.
inline std::vector<std::pair<BigInt, int>> factorize(BigInt n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    if (n < 0) n = -n;
    std::map<BigInt, int> acc;
    detail::factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

// ---------------------------------------------------------------------------

/**
 * Isomorphism type of a finitely generated abelian group:
 * Z^free_rank plus cyclic summands of prime power order.
 */
struct FGAbelianGroup {
    long long free_rank = 0;
    std::vector<std::pair<BigInt, int>> primary;  // (p, e) summand Z/p^e, sorted

    static FGAbelianGroup from_divisors(long long free_rank,
                                        const std::vector<BigInt>& divisors) {
        FGAbelianGroup g;
        g.free_rank = free_rank;
        for (const BigInt& d : divisors) {
            if (d == 0) {
                ++g.free_rank;
                continue;
            }
            if (d == 1) continue;
            for (const auto& [p, e] : factorize(d)) g.primary.emplace_back(p, e);
        }
        std::sort(g.primary.begin(), g.primary.end());
        return g;
    }

    bool is_trivial() const { return free_rank == 0 && primary.empty(); }

    std::set<BigInt> torsion_primes() const {
        std::set<BigInt> out;
        for (const auto& [p, e] : primary) out.insert(p);
        return out;
    }

    /// Exponents e of the Z/p^e summands for a fixed p, ascending.
    std::vector<int> p_exponents(const BigInt& p) const {
        std::vector<int> out;
        for (const auto& [q, e] : primary)
            if (q == p) out.push_back(e);
        return out;
    }

    /// Effect of tensoring with a localization of Z.
    FGAbelianGroup localize(const CoefficientSpec& R) const {
        FGAbelianGroup g;
        g.free_rank = free_rank;
        switch (R.kind) {
            case CoeffKind::Integers:
                g.primary = primary;
                break;
            case CoeffKind::Rationals:
                break;
            case CoeffKind::LocalizedAt:
                for (const auto& [p, e] : primary)
                    if (p == R.p) g.primary.emplace_back(p, e);
                break;
            case CoeffKind::InvertedPrimes:
                for (const auto& [p, e] : primary)
                    if (!std::binary_search(R.primes.begin(), R.primes.end(), p))
                        g.primary.emplace_back(p, e);
                break;
            default:
                throw std::invalid_argument("localize: not a localization of Z");
        }
        return g;
    }

    bool operator==(const FGAbelianGroup& o) const {
        return free_rank == o.free_rank && primary == o.primary;
    }

    std::string to_string() const {
        if (is_trivial()) return "0";
        std::ostringstream s;
        bool first = true;
        if (free_rank == 1) {
            s << "Z";
            first = false;
        } else if (free_rank > 1) {
            s << "Z^" << free_rank;
            first = false;
        }
        for (const auto& [p, e] : primary) {
            if (!first) s << " + ";
            BigInt q = 1;
            for (int i = 0; i < e; ++i) q *= p;
            s << "Z/" << q.str();
            first = false;
        }
        return s.str();
    }
};

// ---------------------------------------------------------------------------

/**
 * Abelian group presented as Z^gens modulo the column span of `relations`.
 */
struct PresentedGroup {
    int gens = 0;
    IntMatrix relations;  // gens x (number of relators)

    PresentedGroup() : relations(0, 0) {}
    PresentedGroup(int g, IntMatrix rel) : gens(g), relations(std::move(rel)) {
        if (relations.rows() != gens)
            throw std::invalid_argument("PresentedGroup: relation rows must equal gens");
    }
};

/**
 * Normal form of a presented group: a unimodular change of coordinates in
 * which the group splits as cyclic summands of the listed orders plus a free
 * part. `to_normal` maps ambient coordinates to normal coordinates (cyclic
 * rows first, then free rows); `normal_reps` gives an ambient representative
 * for each normal generator.
 */
struct GroupStructure {
    std::vector<BigInt> cyclic_orders;  // > 1, in divisibility order
    long long free_rank = 0;
    IntMatrix to_normal;
    IntMatrix normal_reps;

    long long normal_gens() const {
        return static_cast<long long>(cyclic_orders.size()) + free_rank;
    }

    FGAbelianGroup isomorphism_type() const {
        return FGAbelianGroup::from_divisors(free_rank, cyclic_orders);
    }
};

inline GroupStructure analyze_presentation(const PresentedGroup& g) {
    SmithResult s = smith_normal_form(g.relations, true);
    GroupStructure out;
    std::vector<int> keep;
    for (int i = 0; i < s.rank; ++i)
        if (s.divisors[i] > 1) {
            out.cyclic_orders.push_back(s.divisors[i]);
            keep.push_back(i);
        }
    for (int i = s.rank; i < g.gens; ++i) {
        ++out.free_rank;
        keep.push_back(i);
    }
    IntMatrix u_inv = [&] {
        auto inv = solve_integer_matrix(s.U, IntMatrix::identity(g.gens));
        if (!inv) throw std::logic_error("unimodular matrix failed to invert");
        return *inv;
    }();
    const int k = static_cast<int>(keep.size());
    out.to_normal = IntMatrix(k, g.gens);
    out.normal_reps = IntMatrix(g.gens, k);
    for (int j = 0; j < k; ++j) {
        for (int c = 0; c < g.gens; ++c) out.to_normal.set(j, c, s.U.at(keep[j], c));
        out.normal_reps.set_column(j, u_inv.column_vector(keep[j]));
    }
    return out;
}

/// Order of the class of ambient vector x; 0 encodes infinite order.
inline BigInt element_order(const GroupStructure& st, const std::vector<BigInt>& x) {
    std::vector<BigInt> u = st.to_normal.apply(x);
    const int c = static_cast<int>(st.cyclic_orders.size());
    for (std::size_t i = c; i < u.size(); ++i)
        if (u[i] != 0) return 0;
    BigInt ord = 1;
    for (int i = 0; i < c; ++i) {
        const BigInt& d = st.cyclic_orders[i];
        BigInt r = u[i] % d;
        if (r < 0) r += d;
        if (r != 0) ord = lcm(ord, d / gcd(d, r));
    }
    return ord;
}

inline bool element_is_zero(const GroupStructure& st, const std::vector<BigInt>& x) {
    return element_order(st, x) == 1;
}

/**
 * Whether the map sending generators of the source to the columns of m kills
 * nothing of the target after tensoring with R, i.e. is surjective over R.
 * `target_relations` are added to the image before the cokernel test.
 */
inline bool presented_map_surjective(const IntMatrix& m, const IntMatrix& target_relations,
                                     const CoefficientSpec& R) {
    return surjective_over_ring(m.hstack(target_relations), R);
}

// ---------------------------------------------------------------------------
// Hom into a finite cyclic group, kept as an explicit presentation so that
// dual maps can be transported and tested for surjectivity.

/**
 * Hom(A, Z/m) for a presented group A. Columns of `basis` are integer vectors
 * y; the hom they represent sends ambient x to y.x mod m. The presented
 * group `hom` uses those columns as generators.
 */
struct HomIntoCyclic {
    PresentedGroup hom;
    IntMatrix basis;  // A.gens x hom.gens
    BigInt modulus;
};

inline HomIntoCyclic hom_into_cyclic(const PresentedGroup& a, const BigInt& m) {
    if (m <= 0) throw std::invalid_argument("hom_into_cyclic: modulus must be positive");
    const int g = a.gens, k = a.relations.cols();
    // Lattice L = { y : rel^T y = 0 mod m }, via the kernel of [rel^T | mI].
    IntMatrix mi(k, k);
    for (int i = 0; i < k; ++i) mi.set(i, i, m);
    IntMatrix ker = kernel_lattice_basis(a.relations.transpose().hstack(mi));
    IntMatrix basis(g, ker.cols());
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < ker.cols(); ++c) basis.set(r, c, ker.at(r, c));
    // m Z^g sits inside L; its coordinates in the basis are the relators.
    IntMatrix target(g, g);
    for (int i = 0; i < g; ++i) target.set(i, i, m);
    auto rel = solve_integer_matrix(basis, target);
    if (!rel) throw std::logic_error("hom_into_cyclic: mZ^g escaped the hom lattice");
    return {PresentedGroup(basis.cols(), *rel), basis, m};
}

/**
 * Matrix of Hom(g, Z/m) : Hom(B, Z/m) -> Hom(A, Z/m) in the chosen bases,
 * where g : A -> B acts on ambient coordinates by `g_ambient`.
 */
inline IntMatrix hom_dual_map(const HomIntoCyclic& hom_a, const HomIntoCyclic& hom_b,
                              const IntMatrix& g_ambient) {
    IntMatrix pulled = g_ambient.transpose() * hom_b.basis;
    auto coords = solve_integer_matrix(hom_a.basis, pulled);
    if (!coords)
        throw std::logic_error("hom_dual_map: pulled homs escaped the hom lattice");
    return *coords;
}

// ---------------------------------------------------------------------------

/**
 * Whether Hom(g, D) is surjective for the Pruefer group D at prime p, where
 * g : A -> B is given on ambient coordinates by g_ambient.
 *
 * Splits both groups into torsion and free parts. The free parts contribute
 * divisible summands, where surjectivity is a rank condition; the torsion
 * parts are compared through Hom(-, Z/p^N) for N beyond every exponent in
 * sight, which captures the true dual because images of finite groups land
 * in the p^N torsion of D.
 */
inline bool prufer_dual_surjective(const PresentedGroup& a, const PresentedGroup& b,
                                   const IntMatrix& g_ambient, long long p) {
    GroupStructure sa = analyze_presentation(a);
    GroupStructure sb = analyze_presentation(b);
    IntMatrix normal_map = sb.to_normal * (g_ambient * sa.normal_reps);

    const int ca = static_cast<int>(sa.cyclic_orders.size());
    const int cb = static_cast<int>(sb.cyclic_orders.size());

    // Free block, as a map Z^{fA} -> Z^{fB}; its transpose acts on the
    // divisible summands, which it must cover rationally.
    IntMatrix free_block(sb.free_rank, sa.free_rank);
    for (int r = 0; r < sb.free_rank; ++r)
        for (int c = 0; c < sa.free_rank; ++c)
            free_block.set(r, c, normal_map.at(cb + r, ca + c));
    if (integer_rank(free_block) != sa.free_rank) return false;

    int max_exp = 0;
    for (const BigInt& d : sa.cyclic_orders) {
        BigInt t = d;
        int e = 0;
        while (t % p == 0) { t /= p; ++e; }
        max_exp = std::max(max_exp, e);
    }
    for (const BigInt& d : sb.cyclic_orders) {
        BigInt t = d;
        int e = 0;
        while (t % p == 0) { t /= p; ++e; }
        max_exp = std::max(max_exp, e);
    }
    if (max_exp == 0) return true;  // no p-torsion, finite blocks vanish

    BigInt modulus = 1;
    for (int i = 0; i <= max_exp; ++i) modulus *= p;

    IntMatrix rel_a(ca, ca), rel_b(cb, cb);
    for (int i = 0; i < ca; ++i) rel_a.set(i, i, sa.cyclic_orders[i]);
    for (int i = 0; i < cb; ++i) rel_b.set(i, i, sb.cyclic_orders[i]);
    IntMatrix torsion_block(cb, ca);
    for (int r = 0; r < cb; ++r)
        for (int c = 0; c < ca; ++c) torsion_block.set(r, c, normal_map.at(r, c));

    PresentedGroup ta(ca, rel_a), tb(cb, rel_b);
    HomIntoCyclic ha = hom_into_cyclic(ta, modulus);
    HomIntoCyclic hb = hom_into_cyclic(tb, modulus);
    IntMatrix dual = hom_dual_map(ha, hb, torsion_block);
    return presented_map_surjective(dual, ha.hom.relations, CoefficientSpec::Z());
}

}  // namespace markov

#endif
