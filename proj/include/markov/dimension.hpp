#ifndef MARKOV_DIMENSION_HPP
#define MARKOV_DIMENSION_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "markov/abelian.hpp"
#include "markov/block.hpp"
#include "markov/chain_complex.hpp"
#include "markov/coefficients.hpp"
#include "markov/homology.hpp"
#include "markov/int_matrix.hpp"
#include "markov/smith.hpp"
#include "markov/triangulation.hpp"

namespace markov {

namespace detail {

/// All k-dimensional faces of the n-simplex as sorted corner sets.
inline std::vector<std::vector<int>> faces_of_dimension(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> c(k + 1);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.push_back(c);
        int i = k;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j <= k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

/**
 * Relative cohomology data of one face: the preimage pair and the pullback
 * of the fundamental cocycle of (sigma, boundary). The dual of any single
 * top cell generates H^k(sigma, boundary): it pairs with the fundamental
 * cycle by a unit.
 */
struct FaceClass {
    std::vector<int> face;
    PairChainComplex pair;
    std::vector<BigInt> pulled;
};

inline FaceClass face_class(const Block& b, const std::vector<int>& face) {
    const int k = static_cast<int>(face.size()) - 1;
    SubcomplexMask whole = face_mask(b.tau, face);
    SubcomplexMask rim = boundary_face_mask(b.tau, face);
    PairChainComplex target(whole, rim);
    PairChainComplex source(preimage_mask(b.f, whole), preimage_mask(b.f, rim));
    IntMatrix pull = cochain_map_matrix(b.f, source, target, k);
    std::vector<BigInt> unit(target.rank(k), 0);
    if (!unit.empty()) unit[0] = 1;
    std::vector<BigInt> pulled = pull.apply(unit);
    return FaceClass{face, std::move(source), std::move(pulled)};
}

/// Integral order of the pulled-back class: 0 for infinite order, 1 for the
/// zero class.
inline BigInt face_class_order(const FaceClass& fc, int k) {
    return cohomology(fc.pair, k).class_order(fc.pulled);
}

/**
 * Whether the pulled-back class survives with the given coefficients. Over
 * a fraction ring of Z the integral order decides: the class dies exactly
 * when its order becomes invertible. Over the Pruefer group the pairing
 * with cycles reduces the question to the integral order being infinite,
 * because Hom(-, Z[1/p]/Z) kills all torsion reachable here while any
 * infinite-order class pairs nontrivially with a cycle. The prime field is
 * not flat over Z, so there the test runs on cochains directly, which also
 * avoids the normal form on large pairs.
 */
inline bool class_nonzero(const FaceClass& fc, int k, const CoefficientSpec& r) {
    if (r.kind == CoeffKind::PrimeField) {
        IntMatrix prior = fc.pair.boundary(k).transpose();
        IntMatrix joint = prior.hstack(IntMatrix(static_cast<int>(fc.pulled.size()), 1));
        joint.set_column(prior.cols(), fc.pulled);
        return rank_mod_p(joint, r.p) > rank_mod_p(prior, r.p);
    }
    const BigInt o = face_class_order(fc, k);
    switch (r.kind) {
        case CoeffKind::Integers:
            return o != 1;
        case CoeffKind::Rationals:
        case CoeffKind::PruferQuotient:
            return o == 0;
        case CoeffKind::LocalizedAt:
            return o == 0 || o % r.p == 0;
        case CoeffKind::InvertedPrimes:
            return o == 0 || strip_primes(o, r.primes) != 1;
        default:
            throw std::logic_error("class_nonzero: unhandled coefficient ring");
    }
}

}  // namespace detail

/**
 * The largest k for which the fundamental class of some k-face pulls back
 * to a nonzero class of its preimage pair, or 0 when every face dies. This
 * is the degree in which the block map still carries relative cohomology.
 */
inline int cd(const Block& b, const CoefficientSpec& r) {
    for (int k = b.n; k >= 0; --k)
        for (const auto& face : detail::faces_of_dimension(b.n, k))
            if (detail::class_nonzero(detail::face_class(b, face), k, r)) return k;
    return 0;
}

namespace detail {

/// Restriction from the preimage of a closed face to the preimage of its
/// boundary, tested for surjectivity on degree-m cohomology.
inline bool face_restriction_epi(const Block& b, const std::vector<int>& face, int m,
                                 const CoefficientSpec& r) {
    PairChainComplex whole =
        PairChainComplex::absolute(preimage_mask(b.f, face_mask(b.tau, face)));
    PairChainComplex rim =
        PairChainComplex::absolute(preimage_mask(b.f, boundary_face_mask(b.tau, face)));
    IntMatrix include = inclusion_chain_matrix(rim, whole, m);
    if (r.kind == CoeffKind::PruferQuotient) {
        // Divisibility makes H^m(-; D) the plain dual of H_m, so the
        // restriction is onto exactly when the dual of the inclusion is.
        Subquotient on_rim = homology(rim, m);
        Subquotient on_whole = homology(whole, m);
        IntMatrix g = induced_on_subquotient(on_rim, on_whole, include);
        return prufer_dual_surjective(on_rim.group, on_whole.group, g, r.p);
    }
    return cohomology_map_surjective(whole, rim, include.transpose(), m, r);
}

}  // namespace detail

/**
 * The smallest m for which restriction to the boundary preimage is onto in
 * degree-m cohomology for every face. With stable set, surjectivity is
 * required in every degree from m up; both readings agree on the blocks
 * with one jump, and the flag records which one a caller asked for.
 */
inline int cd_upper(const Block& b, const CoefficientSpec& r, bool stable = false) {
    const int top = std::max(b.n, b.f.domain()->dim()) + 1;
    auto epi_at = [&](int m) {
        for (int k = 0; k <= b.n; ++k)
            for (const auto& face : detail::faces_of_dimension(b.n, k))
                if (!detail::face_restriction_epi(b, face, m, r)) return false;
        return true;
    };
    for (int m = 0; m <= top; ++m) {
        if (!epi_at(m)) continue;
        if (!stable) return m;
        bool from_here = true;
        for (int above = m + 1; above <= top && from_here; ++above) from_here = epi_at(above);
        if (from_here) return m;
    }
    return top;  // everything vanishes beyond the domain dimension
}

/**
 * Dimension estimate for the limit of the one-block system. The upper
 * bound holds for every block; the lower bound through cd is certified
 * only for symmetric blocks over a field and is heuristic otherwise.
 */
struct DimensionBounds {
    int lower = 0;
    int upper = 0;
    bool lower_certified = false;

    bool exact() const { return lower == upper; }
};

inline DimensionBounds dim_bounds(const Block& b, const CoefficientSpec& r) {
    DimensionBounds out;
    const int low = cd(b, r);
    const int high = cd_upper(b, r);
    out.lower = low;
    out.upper = std::min(high, std::max(low, high - 1));
    out.lower_certified = b.symmetric && r.is_field();
    return out;
}

/**
 * Primes where the dimension over the local ring departs from the rational
 * one. Candidates are the torsion primes seen in the face cohomology;
 * each candidate is then confirmed against the localized cd.
 */
inline std::vector<long long> exceptional_primes(const Block& b) {
    std::set<long long> candidates;
    for (int k = 0; k <= b.n; ++k)
        for (const auto& face : detail::faces_of_dimension(b.n, k)) {
            detail::FaceClass fc = detail::face_class(b, face);
            for (const BigInt& p : cohomology(fc.pair, k).type().torsion_primes())
                candidates.insert(p.convert_to<long long>());
        }
    const int rational = cd(b, CoefficientSpec::Q());
    std::vector<long long> out;
    for (long long p : candidates)
        if (cd(b, CoefficientSpec::Zloc(p)) != rational) out.push_back(p);
    return out;
}

/**
 * Dimension entries over the coefficient family, keyed by the printed
 * coefficient name: the integers, the rationals, and for each requested
 * prime the prime field, the local ring and the Pruefer group.
 */
struct DimensionProfile {
    std::map<std::string, DimensionBounds> entries;
};

inline DimensionProfile block_profile(const Block& b, const std::vector<long long>& primes) {
    DimensionProfile out;
    auto put = [&](const CoefficientSpec& r) { out.entries[r.to_string()] = dim_bounds(b, r); };
    put(CoefficientSpec::Z());
    put(CoefficientSpec::Q());
    for (long long p : primes) {
        put(CoefficientSpec::Fp(p));
        put(CoefficientSpec::Zloc(p));
        put(CoefficientSpec::Pinf(p));
    }
    return out;
}

/**
 * Consistency report for exact dimension values over the coefficient
 * family. For each prime seen in the input the three inequality chains
 * must hold:
 *
 *   dim_{F_p} - 1 <= dim_{P_p} <= dim_{F_p}
 *   max(dim_Q, dim_{F_p}) <= dim_{L_p} <= max(dim_Q, dim_{P_p} + 1)
 *   dim_{P_p} <= max(dim_Q, dim_{L_p} - 1)
 *
 * writing L_p for the local ring and P_p for the Pruefer group. A prime is
 * regular when all four values agree, and singular when the second chain
 * closes into the equality dim_{L_p} = max(dim_Q, dim_{P_p} + 1); entries
 * needed for a check but absent are reported, never guessed.
 */
struct BocksteinReport {
    std::vector<std::string> violations;
    std::vector<std::string> missing;
    std::vector<long long> regular_primes;
    std::vector<long long> singular_primes;

    bool ok() const { return violations.empty() && missing.empty(); }
};

inline BocksteinReport bockstein_check(const std::map<std::string, int>& dims) {
    BocksteinReport rep;
    auto get = [&](const CoefficientSpec& r) -> std::optional<int> {
        auto it = dims.find(r.to_string());
        if (it == dims.end()) return std::nullopt;
        return it->second;
    };
    auto rational = get(CoefficientSpec::Q());
    if (!rational) rep.missing.push_back(CoefficientSpec::Q().to_string());

    std::set<long long> primes;
    for (const auto& [key, value] : dims) {
        (void)value;
        auto r = CoefficientSpec::parse(key);
        if (!r) {
            rep.violations.push_back("unrecognized coefficient name: " + key);
            continue;
        }
        if (r->kind == CoeffKind::PrimeField || r->kind == CoeffKind::LocalizedAt ||
            r->kind == CoeffKind::PruferQuotient)
            primes.insert(r->p);
    }

    for (long long p : primes) {
        auto field = get(CoefficientSpec::Fp(p));
        auto local = get(CoefficientSpec::Zloc(p));
        auto pruefer = get(CoefficientSpec::Pinf(p));
        if (!field) rep.missing.push_back(CoefficientSpec::Fp(p).to_string());
        if (!local) rep.missing.push_back(CoefficientSpec::Zloc(p).to_string());
        if (!pruefer) rep.missing.push_back(CoefficientSpec::Pinf(p).to_string());
        if (!rational || !field || !local || !pruefer) continue;
        const int q = *rational, f = *field, l = *local, d = *pruefer;

        auto blame = [&](const std::string& what) {
            std::ostringstream s;
            s << "p=" << p << ": " << what;
            rep.violations.push_back(s.str());
        };
        if (!(f - 1 <= d)) blame("dim over the Pruefer group drops below dim over the field - 1");
        if (!(d <= f)) blame("dim over the Pruefer group exceeds dim over the field");
        if (!(std::max(q, f) <= l)) blame("dim over the local ring drops below max(Q, field)");
        if (!(l <= std::max(q, d + 1)))
            blame("dim over the local ring exceeds max(Q, Pruefer + 1)");
        if (!(d <= std::max(q, l - 1)))
            blame("dim over the Pruefer group exceeds max(Q, local - 1)");

        if (q == f && f == l && l == d) {
            rep.regular_primes.push_back(p);
        } else if (l == std::max(q, d + 1)) {
            rep.singular_primes.push_back(p);
        } else {
            blame("neither regular nor split into the singular equality");
        }
    }
    return rep;
}

/**
 * A face realizing cd over a field, normalized to the first one: for a
 * symmetric block the corner permutations carry any realizing face onto
 * the face spanned by the leading corners, which is verified directly.
 */
inline std::vector<int> symmetric_lower_bound_face(const Block& b, const CoefficientSpec& r) {
    if (!b.symmetric)
        throw std::invalid_argument("symmetric_lower_bound_face: block is not symmetric");
    if (!r.is_field())
        throw std::invalid_argument("symmetric_lower_bound_face: field coefficients required");
    const int m = cd(b, r);
    std::vector<int> first(m + 1);
    std::iota(first.begin(), first.end(), 0);
    if (!detail::class_nonzero(detail::face_class(b, first), m, r))
        throw std::logic_error("symmetric_lower_bound_face: symmetry failed to move a witness");
    return first;
}

}  // namespace markov

#endif
