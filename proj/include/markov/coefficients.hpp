#ifndef MARKOV_COEFFICIENTS_HPP
#define MARKOV_COEFFICIENTS_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "markov/int_matrix.hpp"
#include "markov/smith.hpp"

namespace markov {

/**
 * Coefficient systems of the Bockstein family.
 *
 *   Z        integers
 *   Q        rationals
 *   F<p>     prime field, e.g. F2
 *   Zloc<p>  integers localized at p, e.g. Zloc3
 *   Zinv<s>  integers with primes s inverted, e.g. Zinv2,3
 *   Pinf<p>  Pruefer quotient Z[1/p]/Z, e.g. Pinf2
 */
enum class CoeffKind { Integers, Rationals, PrimeField, LocalizedAt, InvertedPrimes, PruferQuotient };

struct CoefficientSpec {
    CoeffKind kind = CoeffKind::Integers;
    long long p = 0;                  // PrimeField, LocalizedAt, PruferQuotient
    std::vector<long long> primes;    // InvertedPrimes, sorted and distinct

    static CoefficientSpec Z() { return {CoeffKind::Integers, 0, {}}; }
    static CoefficientSpec Q() { return {CoeffKind::Rationals, 0, {}}; }
    static CoefficientSpec Fp(long long p) { return {CoeffKind::PrimeField, check_prime(p), {}}; }
    static CoefficientSpec Zloc(long long p) { return {CoeffKind::LocalizedAt, check_prime(p), {}}; }
    static CoefficientSpec Zinv(std::vector<long long> s) {
        std::set<long long> uniq;
        for (long long q : s) uniq.insert(check_prime(q));
        if (uniq.empty()) throw std::invalid_argument("Zinv needs at least one prime");
        return {CoeffKind::InvertedPrimes, 0, {uniq.begin(), uniq.end()}};
    }
    static CoefficientSpec Pinf(long long p) { return {CoeffKind::PruferQuotient, check_prime(p), {}}; }

    bool is_field() const {
        return kind == CoeffKind::Rationals || kind == CoeffKind::PrimeField;
    }

    /// Subrings of Q containing Z, where divisibility arguments apply.
    bool is_zlike() const {
        return kind == CoeffKind::Integers || kind == CoeffKind::LocalizedAt ||
               kind == CoeffKind::InvertedPrimes;
    }

    bool operator==(const CoefficientSpec& o) const {
        return kind == o.kind && p == o.p && primes == o.primes;
    }
    bool operator!=(const CoefficientSpec& o) const { return !(*this == o); }

    std::string to_string() const {
        std::ostringstream s;
        switch (kind) {
            case CoeffKind::Integers: return "Z";
            case CoeffKind::Rationals: return "Q";
            case CoeffKind::PrimeField: s << "F" << p; break;
            case CoeffKind::LocalizedAt: s << "Zloc" << p; break;
            case CoeffKind::PruferQuotient: s << "Pinf" << p; break;
            case CoeffKind::InvertedPrimes:
                s << "Zinv";
                for (std::size_t i = 0; i < primes.size(); ++i)
                    s << (i ? "," : "") << primes[i];
                break;
        }
        return s.str();
    }

    static std::optional<CoefficientSpec> parse(const std::string& text) {
        try {
            if (text == "Z") return Z();
            if (text == "Q") return Q();
            auto tail_int = [](const std::string& s) -> std::optional<long long> {
                if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
                    return std::nullopt;
                return std::stoll(s);
            };
            if (text.rfind("F", 0) == 0) {
                auto v = tail_int(text.substr(1));
                if (v) return Fp(*v);
            }
            if (text.rfind("Zloc", 0) == 0) {
                auto v = tail_int(text.substr(4));
                if (v) return Zloc(*v);
            }
            if (text.rfind("Pinf", 0) == 0) {
                auto v = tail_int(text.substr(4));
                if (v) return Pinf(*v);
            }
            if (text.rfind("Zinv", 0) == 0) {
                std::vector<long long> ps;
                std::stringstream body(text.substr(4));
                std::string item;
                while (std::getline(body, item, ',')) {
                    auto v = tail_int(item);
                    if (!v) return std::nullopt;
                    ps.push_back(*v);
                }
                if (!ps.empty()) return Zinv(ps);
            }
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return std::nullopt;
    }

private:
    static long long check_prime(long long p) {
        if (p < 2) throw std::invalid_argument("prime expected");
        for (long long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("prime expected");
        return p;
    }
};

/// Largest divisor of n coprime to every prime in s.
inline BigInt strip_primes(BigInt n, const std::vector<long long>& s) {
    if (n == 0) return 0;
    if (n < 0) n = -n;
    for (long long q : s)
        while (n % q == 0) n /= q;
    return n;
}

inline int p_adic_valuation(BigInt n, long long p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/**
 * Whether c lies in the R-span of d, i.e. the equation d * x = c has a
 * solution x in R. Only meaningful for subrings of Q; the Pruefer quotient
 * is rejected because it is not a ring of fractions.
 */
inline bool divisible_in_ring(const BigInt& c, const BigInt& d, const CoefficientSpec& R) {
    if (c == 0) return true;
    if (d == 0) return false;
    switch (R.kind) {
        case CoeffKind::Integers:
            return c % d == 0;
        case CoeffKind::Rationals:
            return true;
        case CoeffKind::PrimeField:
            return d % R.p != 0 || c % R.p == 0;
        case CoeffKind::LocalizedAt:
            return p_adic_valuation(c, R.p) >= p_adic_valuation(d, R.p);
        case CoeffKind::InvertedPrimes:
            return c % strip_primes(d, R.primes) == 0;
        case CoeffKind::PruferQuotient:
            throw std::invalid_argument("divisible_in_ring: Pruefer quotient is not a fraction ring");
    }
    return false;
}

/// Whether u is a unit of R (R a subring of Q).
inline bool is_unit_in_ring(const BigInt& u, const CoefficientSpec& R) {
    return divisible_in_ring(1, u, R);
}

/// Rank over a field of the coefficient family.
inline int rank_over_field(const IntMatrix& a, const CoefficientSpec& field) {
    if (field.kind == CoeffKind::Rationals) return rank_over_q(a);
    if (field.kind == CoeffKind::PrimeField) return rank_mod_p(a, field.p);
    throw std::invalid_argument("rank_over_field: not a field");
}

/// Nullspace basis over a field; over Q the integral kernel basis spans it.
inline IntMatrix nullspace_over_field(const IntMatrix& a, const CoefficientSpec& field) {
    if (field.kind == CoeffKind::Rationals) return kernel_lattice_basis(a);
    if (field.kind == CoeffKind::PrimeField) return nullspace_mod_p(a, field.p);
    throw std::invalid_argument("nullspace_over_field: not a field");
}

/**
 * Whether every column of a lies in the R-column-span of b.
 * For fields this is a rank comparison; for Z-like rings it reduces via the
 * Smith form of b to coordinatewise divisibility.
 */
inline bool image_contained(const IntMatrix& a, const IntMatrix& b, const CoefficientSpec& R) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("image_contained: row mismatch");
    if (a.cols() == 0) return true;
    if (R.kind == CoeffKind::Rationals)
        return rank_over_q(b) == rank_over_q(b.hstack(a));
    if (R.kind == CoeffKind::PrimeField)
        return rank_mod_p(b, R.p) == rank_mod_p(b.hstack(a), R.p);
    if (!R.is_zlike())
        throw std::invalid_argument("image_contained: unsupported coefficient system");
    SmithResult s = smith_normal_form(b, true);
    for (int j = 0; j < a.cols(); ++j) {
        std::vector<BigInt> c = s.U.apply(a.column_vector(j));
        for (int i = 0; i < b.rows(); ++i) {
            if (i < s.rank) {
                if (!divisible_in_ring(c[i], s.divisors[i], R)) return false;
            } else if (c[i] != 0) {
                return false;
            }
        }
    }
    return true;
}

/**
 * Whether coker(a) vanishes after tensoring with R, i.e. the map given by a
 * becomes surjective over R.
 */
inline bool surjective_over_ring(const IntMatrix& a, const CoefficientSpec& R) {
    if (a.rows() == 0) return true;
    if (R.kind == CoeffKind::Rationals) return rank_over_q(a) == a.rows();
    if (R.kind == CoeffKind::PrimeField) return rank_mod_p(a, R.p) == a.rows();
    if (!R.is_zlike())
        throw std::invalid_argument("surjective_over_ring: unsupported coefficient system");
    SmithResult s = smith_normal_form(a, false);
    if (s.rank != a.rows()) return false;
    for (const BigInt& d : s.divisors)
        if (!is_unit_in_ring(d, R)) return false;
    return true;
}

}  // namespace markov

#endif
