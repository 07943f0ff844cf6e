// Acceptance gate: one verdict line per criterion, nonzero exit on any
// failure. Time limits, the simplex budget and the corpus cap are pinned
// here as constants.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "markov/block.hpp"
#include "markov/chain_complex.hpp"
#include "markov/coefficients.hpp"
#include "markov/dimension.hpp"
#include "markov/homology.hpp"
#include "markov/subdivision.hpp"
#include "markov/tower.hpp"
#include "markov/triangulation.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace markov;

namespace {

constexpr double kLimitBlockDims = 10.0;
constexpr double kLimitExceptional = 30.0;
constexpr double kLimitSymmetrize = 60.0;
constexpr double kLimitTower = 300.0;
constexpr std::size_t kTowerBudget = 500000;
constexpr std::size_t kCorpusCap = 300;

int failures = 0;
int tower_evidence_depth = -1;

struct Check {
    std::vector<std::string> problems;
    std::vector<std::string> remarks;

    void that(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void fail(const std::string& what) { problems.push_back(what); }
    void remark(const std::string& text) { remarks.push_back(text); }
};

template <typename Body>
void criterion(int number, const std::string& label, double limit_seconds, Body body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.fail(std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && seconds > limit_seconds) c.fail("time limit exceeded");

    std::ostringstream timing;
    timing.setf(std::ios::fixed);
    timing.precision(1);
    timing << seconds << "s";
    if (limit_seconds > 0) timing << " of " << limit_seconds << "s allowed";

    if (!c.problems.empty()) ++failures;
    std::cout << (c.problems.empty() ? "[PASS]" : "[FAIL]") << " " << number << ". " << label
              << " (" << timing.str() << ")\n";
    for (const std::string& p : c.problems) std::cout << "        ! " << p << "\n";
    for (const std::string& r : c.remarks) std::cout << "        " << r << "\n";
    std::cout.flush();
}

struct CorpusEntry {
    std::string name;
    ComplexPtr complex;
    bool random = false;
};

/// Fixed fixtures plus one hundred seeded random complexes, every entry
/// within the corpus cap.
const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        out.push_back({"cycle(3)", fixtures::cycle(3)});
        out.push_back({"cycle(6)", fixtures::cycle(6)});
        out.push_back({"projective plane", fixtures::projective_plane()});
        out.push_back({"torus", fixtures::torus()});
        for (int n = 1; n <= 3; ++n)
            out.push_back({"simplex(" + std::to_string(n) + ")",
                           make_complex(SimplicialComplex::full_simplex(n))});
        for (int n = 1; n <= 3; ++n)
            out.push_back({"sphere(" + std::to_string(n - 1) + ")",
                           make_complex(SimplicialComplex::boundary_of_simplex(n))});
        out.push_back({"pontryagin(2) domain", pontryagin_block(2).f.domain()});
        out.push_back({"cone(2)", cone_triangulation(2).complex});

        std::mt19937 rng(271828u);
        int made = 0;
        while (made < 100) {
            const int verts = 3 + static_cast<int>(rng() % 6u);
            const int gens = 1 + static_cast<int>(rng() % 9u);
            std::vector<Simplex> maximal;
            for (int v = 0; v < verts; ++v) maximal.push_back({v});
            for (int g = 0; g < gens; ++g) {
                const std::size_t size =
                    std::min<std::size_t>(2 + rng() % 3u, static_cast<std::size_t>(verts));
                std::vector<int> pool(verts);
                std::iota(pool.begin(), pool.end(), 0);
                for (std::size_t i = 0; i < size; ++i)
                    std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
                Simplex s(pool.begin(), pool.begin() + static_cast<long>(size));
                std::sort(s.begin(), s.end());
                maximal.push_back(std::move(s));
            }
            try {
                ComplexPtr k =
                    make_complex(SimplicialComplex::from_maximal(maximal, kCorpusCap));
                out.push_back({"random #" + std::to_string(made), std::move(k), true});
                ++made;
            } catch (const BudgetExceeded&) {
            }
        }
        return out;
    }();
    return entries;
}

long long p_summand_count(const FGAbelianGroup& g, long long p) {
    return static_cast<long long>(g.p_exponents(p).size());
}

}  // namespace

int main() {
    std::cout << "markovcd acceptance run\n";

    criterion(1, "dimension values of the mod 2 segment block", kLimitBlockDims, [](Check& c) {
        const Block b = pontryagin_block(2);
        const CoefficientSpec q = CoefficientSpec::Q();
        const CoefficientSpec f2 = CoefficientSpec::Fp(2);
        c.that(cd(b, q) == 1, "lower dimension over Q is not 1");
        c.that(cd_upper(b, q) == 1, "upper dimension over Q is not 1");
        c.that(cd(b, f2) == 2, "lower dimension mod 2 is not 2");
        c.that(cd_upper(b, f2) == 2, "upper dimension mod 2 is not 2");
        const Block s = symmetrize(b);
        const DimensionBounds over_q = dim_bounds(s, q);
        c.that(over_q.exact() && over_q.lower == 1,
               "symmetrized bounds over Q are not exactly 1");
        c.that(over_q.lower_certified, "symmetrized lower bound over Q is not certified");
        const DimensionBounds over_f2 = dim_bounds(s, f2);
        c.that(over_f2.exact() && over_f2.lower == 2,
               "symmetrized bounds mod 2 are not exactly 2");
        c.that(over_f2.lower_certified, "symmetrized lower bound mod 2 is not certified");
    });

    criterion(2, "exceptional primes of segment blocks, identity blocks, and a sum",
              kLimitExceptional, [](Check& c) {
                  for (long long p : {2LL, 3LL, 5LL}) {
                      const std::vector<long long> got = exceptional_primes(pontryagin_block(p));
                      c.that(got == std::vector<long long>{p},
                             "pontryagin(" + std::to_string(p) + ") does not report {" +
                                 std::to_string(p) + "}");
                  }
                  for (int n = 0; n <= 3; ++n)
                      c.that(exceptional_primes(identity_block(n)).empty(),
                             "identity(" + std::to_string(n) + ") reports a spurious prime");
                  const Block sum = block_sum(pontryagin_block(2, 3), pontryagin_block(3, 2));
                  c.that(exceptional_primes(sum) == (std::vector<long long>{2, 3}),
                         "the sum of the 2- and 3-segment blocks does not report {2, 3}");
              });

    criterion(3, "symmetrization preserves both dimension bounds", kLimitSymmetrize,
              [](Check& c) {
                  const std::vector<std::pair<std::string, Block>> blocks = {
                      {"pontryagin(2)", pontryagin_block(2)},
                      {"identity(1)", identity_block(1)},
                      {"identity(2)", identity_block(2)},
                  };
                  const std::vector<CoefficientSpec> rings = {
                      CoefficientSpec::Q(), CoefficientSpec::Fp(2), CoefficientSpec::Fp(3),
                      CoefficientSpec::Zloc(2), CoefficientSpec::Zinv({2})};
                  for (const auto& [name, b] : blocks) {
                      const Block s = symmetrize(b);
                      for (const CoefficientSpec& r : rings) {
                          c.that(cd(b, r) == cd(s, r),
                                 name + ": lower dimension changes over " + r.to_string());
                          c.that(cd_upper(b, r) == cd_upper(s, r),
                                 name + ": upper dimension changes over " + r.to_string());
                      }
                  }
              });

    criterion(4, "field homology against independent elimination and torsion counts", 0,
              [](Check& c) {
                  int randoms = 0;
                  for (const CorpusEntry& e : corpus()) {
                      c.that(detail::total_simplices(*e.complex) <= kCorpusCap,
                             e.name + " exceeds the corpus cap");
                      const PairChainComplex cc = PairChainComplex::whole_complex(e.complex);
                      const int top = e.complex->dim();
                      std::vector<FGAbelianGroup> h;
                      for (int k = 0; k <= top; ++k) h.push_back(homology_group(cc, k));
                      for (long long p : {2LL, 3LL, 5LL}) {
                          const CoefficientSpec field = CoefficientSpec::Fp(p);
                          for (int k = 0; k <= top; ++k) {
                              const long long lib = field_dim(cc, k, field);
                              const long long direct =
                                  static_cast<long long>(cc.rank(k)) -
                                  oracles::mod_p_rank(cc.boundary(k), p) -
                                  oracles::mod_p_rank(cc.boundary(k + 1), p);
                              if (lib != direct)
                                  c.fail(e.name + ": mod " + std::to_string(p) +
                                         " dimension in degree " + std::to_string(k) +
                                         " disagrees with direct elimination");
                              const long long counted =
                                  h[k].free_rank + p_summand_count(h[k], p) +
                                  (k > 0 ? p_summand_count(h[k - 1], p) : 0);
                              if (lib != counted)
                                  c.fail(e.name + ": mod " + std::to_string(p) +
                                         " dimension in degree " + std::to_string(k) +
                                         " disagrees with the torsion count");
                          }
                      }
                      if (e.random) ++randoms;
                  }
                  c.that(randoms >= 100, "fewer than 100 random complexes were generated");
              });

    criterion(5, "barycentric subdivision: homology preserved, characteristic maps light", 0,
              [](Check& c) {
                  for (const CorpusEntry& e : corpus()) {
                      const Subdivision sub = barycentric_subdivision(e.complex);
                      const PairChainComplex before = PairChainComplex::whole_complex(e.complex);
                      const PairChainComplex after =
                          PairChainComplex::whole_complex(sub.complex);
                      for (int k = 0; k <= e.complex->dim(); ++k) {
                          const FGAbelianGroup want = homology_group(before, k);
                          const FGAbelianGroup got = homology_group(after, k);
                          if (!(want == got))
                              c.fail(e.name + " degree " + std::to_string(k) + ": " +
                                     got.to_string() + " instead of " + want.to_string());
                      }
                      const int n = e.complex->dim();
                      const SimplicialMap chi = characteristic_map(
                          sub, n, make_complex(SimplicialComplex::full_simplex(n)));
                      if (!chi.is_light())
                          c.fail(e.name + ": characteristic map collapses an edge");
                  }
              });

    criterion(6, "depth-2 tower within budget, with both star-condition scans", kLimitTower,
              [](Check& c) {
                  const Block b = pontryagin_block(2);
                  TowerOptions opts;
                  opts.budget = kTowerBudget;
                  const Tower t = build_tower(b, 2, opts);
                  c.that(t.complete && t.depth() == 2,
                         "tower construction fell short of depth 2");
                  for (int i = 0; i <= t.depth(); ++i)
                      c.that(detail::total_simplices(*t.stages[i].complex) <= kTowerBudget,
                             "stage " + std::to_string(i) + " exceeds the simplex budget");
                  if (t.complete && t.depth() == 2) {
                      const auto rational = scan_star_condition(t, 0, 1, CoefficientSpec::Q());
                      c.that(rational.has_value(),
                             "no stage shift satisfies the rational condition at m = 1");
                      const auto mod2 = scan_star_condition(t, 0, 1, CoefficientSpec::Fp(2));
                      c.that(!mod2.has_value(),
                             "a stage shift satisfies the mod 2 condition at m = 1");
                      if (c.problems.empty()) tower_evidence_depth = t.depth();
                  }
              });

    criterion(7, "profile consistency and sensitivity to mutation", 0, [](Check& c) {
        const DimensionProfile prof = block_profile(pontryagin_block(2), {2});
        const std::vector<std::pair<std::string, int>> expected = {
            {"Q", 1}, {"F2", 2}, {"Zloc2", 2}, {"Pinf2", 1}};
        std::map<std::string, int> dims;
        for (const auto& [key, want] : expected) {
            const auto it = prof.entries.find(key);
            if (it == prof.entries.end() || !it->second.exact()) {
                c.fail(key + ": no exact value in the profile");
                continue;
            }
            if (it->second.lower != want)
                c.fail(key + ": value " + std::to_string(it->second.lower) + " instead of " +
                       std::to_string(want));
            dims[key] = it->second.lower;
        }
        const BocksteinReport report = bockstein_check(dims);
        c.that(report.ok(), "the computed profile fails a consistency inequality");
        c.that(report.singular_primes == std::vector<long long>{2},
               "prime 2 is not classified singular");
        c.that(report.regular_primes.empty(), "a prime is wrongly classified regular");
        for (const auto& [key, want] : expected) {
            std::map<std::string, int> mutated = dims;
            mutated[key] += 2;
            if (bockstein_check(mutated).violations.empty())
                c.fail("raising " + key + " by 2 triggers no violation");
        }
    });

    criterion(8, "scope statement for infinite-system results", 0, [](Check& c) {
        c.that(tower_evidence_depth >= 2, "no finite tower evidence is available");
        c.remark("Results that quantify over the whole infinite system (a stage shift valid");
        c.remark("at every depth, homology or dimension of the limit space, block families");
        c.remark("in high dimension) are out of computational reach. They are replaced by");
        c.remark("the block-level checks above plus finite tower evidence at depth " +
                 std::to_string(tower_evidence_depth) + "; every");
        c.remark("scan verdict in the reports carries the depth it was checked to, so a");
        c.remark("\"none within depth\" outcome is inconclusive rather than a refutation.");
    });

    if (failures != 0) {
        std::cout << failures << " of 8 criteria failed\n";
        return 1;
    }
    std::cout << "all 8 criteria satisfied\n";
    return 0;
}
