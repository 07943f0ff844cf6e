#ifndef MARKOV_CLI_HPP
#define MARKOV_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "markov/block.hpp"
#include "markov/coefficients.hpp"
#include "markov/dimension.hpp"
#include "markov/homology.hpp"
#include "markov/json_io.hpp"
#include "markov/tower.hpp"

namespace markov {

namespace detail {

struct BlockFlags {
    std::string name;
    int n = 2;
    std::string p_text;
    int scale = 1;
    std::string complex_file;
    std::string tau_text;
    bool symmetrized = false;
};

inline std::vector<long long> parse_ll_list(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument(std::string(what) + ": integer list expected, got '" +
                                        text + "'");
        else
            out.push_back(std::stoll(tok));
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

inline SymmetricTriangulation tau_from_text(const std::string& text) {
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        const std::string arg = text.substr(colon + 1);
        if (!arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos) {
            if (kind == "plain") return plain_triangulation(std::stoi(arg));
            if (kind == "cone") return cone_triangulation(std::stoi(arg));
        }
    }
    throw std::invalid_argument("tau spec must be plain:<n> or cone:<q>, got '" + text + "'");
}

inline bool same_labeled_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    std::vector<Simplex> ta = a.maximal_simplices(), tb = b.maximal_simplices();
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return ta == tb;
}

struct BuiltBlock {
    Block block;
    Json parameters;
    std::vector<std::string> conventions;
};

inline BuiltBlock block_from_flags(const BlockFlags& bf) {
    BuiltBlock out;
    out.parameters = Json::object();
    if (bf.name == "identity") {
        out.block = identity_block(bf.n);
        out.parameters["n"] = bf.n;
    } else if (bf.name == "pontryagin") {
        if (bf.p_text.empty()) throw std::invalid_argument("pontryagin: --p required");
        const auto ps = parse_ll_list(bf.p_text, "--p");
        if (ps.size() != 1) throw std::invalid_argument("pontryagin: one prime expected");
        out.block = pontryagin_block(ps[0], bf.scale);
        out.parameters["p"] = ps[0];
        out.parameters["scale"] = bf.scale;
    } else if (bf.name == "pontryagin-sum") {
        if (bf.p_text.empty()) throw std::invalid_argument("pontryagin-sum: --p required");
        const auto ps = parse_ll_list(bf.p_text, "--p");
        if (ps.size() != 2) throw std::invalid_argument("pontryagin-sum: two primes expected");
        // Opposite scales give both summands p1*p2 segments per target edge,
        // so the two triangulations agree without refinement.
        out.block = block_sum(pontryagin_block(ps[0], static_cast<int>(ps[1])),
                              pontryagin_block(ps[1], static_cast<int>(ps[0])));
        out.parameters["p"] = std::vector<long long>{ps[0], ps[1]};
        out.parameters["scales"] = std::vector<long long>{ps[1], ps[0]};
        out.conventions.push_back(
            "summand targets aligned corner by corner; a finer summand triangulation "
            "would be refined barycentrically until both sides agree");
    } else if (bf.name == "custom") {
        if (bf.complex_file.empty() || bf.tau_text.empty())
            throw std::invalid_argument("custom: --complex and --tau required");
        std::ifstream in(bf.complex_file);
        if (!in) throw std::invalid_argument("cannot open " + bf.complex_file);
        const SimplicialMap loaded = map_from_json(Json::parse(in));
        SymmetricTriangulation tau = tau_from_text(bf.tau_text);
        if (!same_labeled_complex(*loaded.codomain(), *tau.complex))
            throw std::invalid_argument(
                "custom: the map codomain does not match the tau complex");
        out.block.n = tau.n;
        out.block.tau = std::move(tau);
        out.block.f = SimplicialMap(loaded.domain(), out.block.tau.complex,
                                    loaded.vertex_map());
        out.block.symmetric = false;
        out.block.name = "custom(" + bf.complex_file + ")";
        std::string why;
        if (!verify_block(out.block, &why)) throw std::invalid_argument("custom: " + why);
        out.parameters["complex"] = bf.complex_file;
        out.parameters["tau"] = bf.tau_text;
    } else {
        throw std::invalid_argument("unknown block: " + bf.name);
    }
    if (bf.symmetrized) {
        out.block = symmetrize(out.block);
        out.parameters["symmetrized"] = true;
    }
    return out;
}

inline std::vector<CoefficientSpec> parse_coeff_list(const std::vector<std::string>& chunks) {
    std::vector<std::string> raw;
    for (const std::string& chunk : chunks) {
        std::stringstream ss(chunk);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty())
                throw std::invalid_argument("malformed coefficient list: " + chunk);
            // a bare number continues a Zinv prime list split at its comma
            if (!raw.empty() && raw.back().rfind("Zinv", 0) == 0 &&
                tok.find_first_not_of("0123456789") == std::string::npos)
                raw.back() += "," + tok;
            else
                raw.push_back(tok);
        }
    }
    std::vector<CoefficientSpec> out;
    for (const std::string& text : raw) {
        const auto spec = CoefficientSpec::parse(text);
        if (!spec) throw std::invalid_argument("malformed coefficient: " + text);
        out.push_back(*spec);
    }
    if (out.empty()) out = {CoefficientSpec::Z(), CoefficientSpec::Q()};
    return out;
}

/// Free part over the named ring followed by finite cyclic summands.
inline std::string module_string(const std::string& ring, long long free_rank,
                                 const std::vector<std::pair<BigInt, int>>& primary) {
    std::ostringstream s;
    bool first = true;
    if (free_rank == 1) {
        s << ring;
        first = false;
    } else if (free_rank > 1) {
        s << ring << "^" << free_rank;
        first = false;
    }
    for (const auto& [p, e] : primary) {
        if (!first) s << " + ";
        BigInt q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        s << "Z/" << q.str();
        first = false;
    }
    return first ? "0" : s.str();
}

inline std::vector<std::pair<BigInt, int>> p_part(const FGAbelianGroup& g, long long p) {
    std::vector<std::pair<BigInt, int>> out;
    for (const auto& [q, e] : g.primary)
        if (q == p) out.emplace_back(q, e);
    return out;
}

/**
 * Homology and cohomology of the pair (domain, preimage of the target
 * boundary) over each requested coefficient ring, one row per ring together
 * with the cd value. Everything except the prime fields is derived from the
 * integral groups, which is exact: localization is flat and the divisible
 * quotient group is injective, so the universal-coefficient sequences
 * collapse; the prime fields get the direct rank computation instead.
 */
inline Json homology_rows(const Block& b, const std::vector<CoefficientSpec>& coeffs) {
    std::vector<int> all(b.n + 1);
    std::iota(all.begin(), all.end(), 0);
    const PairChainComplex pair(preimage_mask(b.f, face_mask(b.tau, all)),
                                preimage_mask(b.f, boundary_face_mask(b.tau, all)));
    const int top = b.f.domain()->dim();
    std::vector<FGAbelianGroup> hom(top + 1), coh(top + 1);
    for (int k = 0; k <= top; ++k) {
        hom[k] = homology_group(pair, k);
        coh[k] = cohomology(pair, k).type();
    }

    Json rows = Json::array();
    for (const CoefficientSpec& r : coeffs) {
        Json table = Json::array();
        for (int k = 0; k <= top; ++k) {
            std::string h, c;
            switch (r.kind) {
                case CoeffKind::Integers:
                    h = hom[k].to_string();
                    c = coh[k].to_string();
                    break;
                case CoeffKind::Rationals:
                    h = module_string("Q", hom[k].free_rank, {});
                    c = module_string("Q", coh[k].free_rank, {});
                    break;
                case CoeffKind::PrimeField:
                    h = c = module_string(r.to_string(), field_dim(pair, k, r), {});
                    break;
                case CoeffKind::LocalizedAt:
                case CoeffKind::InvertedPrimes: {
                    const FGAbelianGroup lh = hom[k].localize(r), lc = coh[k].localize(r);
                    h = module_string(r.to_string(), lh.free_rank, lh.primary);
                    c = module_string(r.to_string(), lc.free_rank, lc.primary);
                    break;
                }
                case CoeffKind::PruferQuotient: {
                    // homology picks up the p-torsion one degree down,
                    // cohomology the p-torsion of its own degree, and free
                    // ranks turn into divisible summands
                    const auto below = k > 0 ? p_part(hom[k - 1], r.p)
                                             : std::vector<std::pair<BigInt, int>>{};
                    h = module_string(r.to_string(), hom[k].free_rank, below);
                    c = module_string(r.to_string(), hom[k].free_rank, p_part(hom[k], r.p));
                    break;
                }
            }
            table.push_back(Json{{"degree", k}, {"homology", h}, {"cohomology", c}});
        }
        rows.push_back(
            Json{{"coefficients", r.to_string()}, {"cd", cd(b, r)}, {"table", table}});
    }
    return rows;
}

inline Json counts_json(const SimplicialComplex& k) {
    Json j;
    j["vertices"] = k.vertex_count();
    std::vector<std::size_t> by_dim;
    std::size_t total = 0;
    for (int d = 0; d <= k.dim(); ++d) {
        by_dim.push_back(k.count(d));
        total += k.count(d);
    }
    j["simplices_by_dim"] = by_dim;
    j["total"] = total;
    return j;
}

inline Json manifest_json(const BuiltBlock& built, const std::string& constructor) {
    const Block& b = built.block;
    Json m;
    m["name"] = b.name;
    m["constructor"] = constructor;
    m["parameters"] = built.parameters;
    m["n"] = b.n;
    m["symmetric"] = b.symmetric;
    m["group_order"] = b.actions.size();
    std::string why;
    m["verified"] = verify_block(b, &why);
    if (!why.empty()) m["problem"] = why;
    m["domain"] = counts_json(*b.f.domain());
    m["target"] = counts_json(*b.tau.complex);
    std::vector<int> all(b.n + 1);
    std::iota(all.begin(), all.end(), 0);
    m["boundary_preimage"] = Json{
        {"simplices", preimage_mask(b.f, boundary_face_mask(b.tau, all)).size()}};
    if (!built.conventions.empty()) m["conventions"] = built.conventions;
    return m;
}

struct ScanSpec {
    int m = 0;
    CoefficientSpec r;
    int l = 0;
};

inline ScanSpec parse_scan(const std::string& text) {
    const auto first = text.find(':');
    const auto last = text.rfind(':');
    if (first == std::string::npos || last == first)
        throw std::invalid_argument("scan spec must be m:coefficients:l, got '" + text + "'");
    const std::string m_text = text.substr(0, first);
    const std::string r_text = text.substr(first + 1, last - first - 1);
    const std::string l_text = text.substr(last + 1);
    if (m_text.empty() || m_text.find_first_not_of("0123456789") != std::string::npos ||
        l_text.empty() || l_text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("scan spec must be m:coefficients:l, got '" + text + "'");
    const auto spec = CoefficientSpec::parse(r_text);
    if (!spec) throw std::invalid_argument("malformed coefficient: " + r_text);
    return ScanSpec{std::stoi(m_text), *spec, std::stoi(l_text)};
}

inline bool md_scalar(const Json& v) { return v.is_primitive(); }

inline std::string md_text(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

/// Cells may be scalars or flat arrays of scalars.
inline bool md_cell(const Json& v) {
    if (md_scalar(v)) return true;
    if (!v.is_array()) return false;
    for (const Json& e : v)
        if (!md_scalar(e)) return false;
    return true;
}

inline std::string md_cell_text(const Json& v) {
    if (md_scalar(v)) return md_text(v);
    std::string s;
    for (const Json& e : v) {
        if (!s.empty()) s += ", ";
        s += md_text(e);
    }
    return s;
}

inline bool md_table_like(const Json& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const Json& e : v) {
        if (!e.is_object() || e.empty()) return false;
        for (const auto& item : e.items())
            if (!md_cell(item.value())) return false;
    }
    return true;
}

inline void md_render(std::ostream& s, const std::string& title, const Json& v, int level);

inline void md_object(std::ostream& s, const Json& v, int level) {
    for (const auto& item : v.items())
        if (md_cell(item.value()))
            s << "- " << item.key() << ": " << md_cell_text(item.value()) << "\n";
    for (const auto& item : v.items())
        if (!md_cell(item.value())) md_render(s, item.key(), item.value(), level);
}

inline void md_render(std::ostream& s, const std::string& title, const Json& v, int level) {
    s << "\n" << std::string(level, '#') << " " << title << "\n\n";
    if (v.is_object()) {
        md_object(s, v, level + 1);
        return;
    }
    if (md_table_like(v)) {
        std::vector<std::string> cols;
        for (const Json& e : v)
            for (const auto& item : e.items())
                if (std::find(cols.begin(), cols.end(), item.key()) == cols.end())
                    cols.push_back(item.key());
        s << "|";
        for (const std::string& c : cols) s << " " << c << " |";
        s << "\n|";
        for (std::size_t i = 0; i < cols.size(); ++i) s << " --- |";
        s << "\n";
        for (const Json& e : v) {
            s << "|";
            for (const std::string& c : cols)
                s << " " << (e.contains(c) ? md_cell_text(e[c]) : "") << " |";
            s << "\n";
        }
        return;
    }
    if (v.is_array()) {
        int i = 0;
        for (const Json& e : v) {
            if (md_cell(e))
                s << "- " << md_cell_text(e) << "\n";
            else
                md_render(s, title + "[" + std::to_string(i) + "]", e, level + 1);
            ++i;
        }
        return;
    }
    s << md_cell_text(v) << "\n";
}

inline std::string report_markdown(const Json& envelope) {
    std::ostringstream s;
    s << "# markovcd report\n\n";
    s << "- command: `" << envelope["command"].get<std::string>() << "`\n";
    s << "- engine: " << envelope["engine"]["name"].get<std::string>() << " "
      << envelope["engine"]["version"].get<std::string>() << "\n";
    md_render(s, "results", envelope["results"], 2);
    md_render(s, "provenance", envelope["provenance"], 2);
    return s.str();
}

/// Writes through a temporary name in the same directory, then renames.
inline void write_report(const std::string& path, const Json& envelope,
                         const std::string& payload) {
    std::string body;
    if (path.ends_with(".md"))
        body = report_markdown(envelope);
    else if (path.ends_with(".json"))
        body = payload;
    else
        throw std::invalid_argument("out file must end in .json or .md: " + path);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::invalid_argument("cannot write " + tmp);
        f << body;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

/**
 * Command-line entry point, exposed as a function so tests can drive it.
 * args excludes the program name. Exit codes: 0 success, 2 a scan came back
 * inconclusive, 3 the tower hit its budget and the report is partial,
 * 1 any error.
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariants of one-block inverse systems", "markovcd"};
    app.require_subcommand(1);

    detail::BlockFlags bf;
    std::vector<std::string> coeff_texts;
    std::vector<std::string> scan_texts;
    std::string out_file;
    std::string primes_text;
    int depth = 1;
    std::size_t budget = 500000;
    int subdiv = 1;
    int mesh_stage = 1;

    const auto add_block_flags = [&](CLI::App* cmd) {
        cmd->add_option("name", bf.name, "identity | pontryagin | pontryagin-sum | custom")
            ->required();
        cmd->add_option("--n", bf.n, "target dimension of the identity block");
        cmd->add_option("--p", bf.p_text,
                        "prime for pontryagin, or two primes a,b for pontryagin-sum");
        cmd->add_option("--scale", bf.scale, "triangulation scale of the pontryagin block");
        cmd->add_option("--complex", bf.complex_file, "simplicial map json for a custom block");
        cmd->add_option("--tau", bf.tau_text, "target triangulation, plain:<n> or cone:<q>");
        cmd->add_flag("--symmetrize", bf.symmetrized, "take the equivariant hull");
        cmd->add_option("--out", out_file, "also write the report to a .json or .md file");
    };

    CLI::App* block_cmd = app.add_subcommand("block", "building block inspection");
    block_cmd->require_subcommand(1);
    CLI::App* info = block_cmd->add_subcommand(
        "info", "manifest, homology of the pair over the target boundary, cd values");
    add_block_flags(info);
    info->add_option("--coeff", coeff_texts,
                     "coefficients, e.g. Z,Q,F2,Zloc2,Zinv2,3,Pinf2; default Z,Q");

    CLI::App* profile = app.add_subcommand(
        "profile", "dimension bounds over the coefficient family with consistency checks");
    add_block_flags(profile);
    profile->add_option("--primes", primes_text,
                        "primes for the family; defaults to the exceptional ones");

    CLI::App* tower = app.add_subcommand(
        "tower", "finite tower stages: sizes, class table, scans, mesh proxy");
    add_block_flags(tower);
    tower->add_option("--depth", depth, "stages to build")->required();
    tower->add_option("--budget", budget, "simplex cap per stage");
    tower->add_option("--subdiv", subdiv, "barycentric steps per stage");
    tower->add_option("--scan", scan_texts, "star-condition scan m:coefficients:l, repeatable");
    tower->add_option("--mesh-stage", mesh_stage, "base stage of the mesh proxy");

    std::string echoed = "markovcd";
    for (const std::string& a : args) echoed += " " + a;

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Json results;
        Json provenance = Json::array();
        int exit_code = 0;

        if (info->parsed()) {
            const detail::BuiltBlock built = detail::block_from_flags(bf);
            const Block& b = built.block;
            const auto coeffs = detail::parse_coeff_list(coeff_texts);
            results["manifest"] = detail::manifest_json(built, bf.name);
            provenance.push_back(Json{{"quantity", "results.manifest"},
                                      {"operation", "block_construction"},
                                      {"inputs", b.name}});
            results["homology"] = detail::homology_rows(b, coeffs);
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                const std::string at = "results.homology[" + std::to_string(i) + "]";
                provenance.push_back(Json{{"quantity", at + ".table"},
                                          {"operation", "relative_pair_homology"},
                                          {"inputs", b.name},
                                          {"coefficients", coeffs[i].to_string()}});
                provenance.push_back(Json{{"quantity", at + ".cd"},
                                          {"operation", "cd"},
                                          {"inputs", b.name},
                                          {"coefficients", coeffs[i].to_string()}});
            }
        } else if (profile->parsed()) {
            const detail::BuiltBlock built = detail::block_from_flags(bf);
            const Block& b = built.block;
            const std::vector<long long> exceptional = exceptional_primes(b);
            const std::vector<long long> primes =
                profile->count("--primes") ? detail::parse_ll_list(primes_text, "--primes")
                                           : exceptional;
            const DimensionProfile prof = block_profile(b, primes);
            Json entries = Json::object();
            std::map<std::string, int> dims;
            for (const auto& [ring, bounds] : prof.entries) {
                entries[ring] = Json{{"lower", bounds.lower},
                                     {"upper", bounds.upper},
                                     {"exact", bounds.exact()},
                                     {"lower_certified", bounds.lower_certified}};
                if (bounds.exact()) dims[ring] = bounds.lower;
            }
            const BocksteinReport rep = bockstein_check(dims);
            results["block"] = b.name;
            results["entries"] = entries;
            results["exceptional_primes"] = exceptional;
            results["dims_used"] = dims;
            results["bockstein"] = Json{{"ok", rep.ok()},
                                        {"violations", rep.violations},
                                        {"missing", rep.missing},
                                        {"regular_primes", rep.regular_primes},
                                        {"singular_primes", rep.singular_primes}};
            provenance.push_back(Json{{"quantity", "results.entries"},
                                      {"operation", "dim_bounds"},
                                      {"inputs", b.name}});
            provenance.push_back(Json{{"quantity", "results.exceptional_primes"},
                                      {"operation", "exceptional_primes"},
                                      {"inputs", b.name}});
            provenance.push_back(Json{{"quantity", "results.bockstein"},
                                      {"operation", "bockstein_check"},
                                      {"inputs", b.name}});
        } else {
            const detail::BuiltBlock built = detail::block_from_flags(bf);
            const Block& b = built.block;
            std::vector<detail::ScanSpec> scans;
            for (const std::string& text : scan_texts) scans.push_back(detail::parse_scan(text));
            if (depth < 0) throw std::invalid_argument("--depth must be nonnegative");

            TowerOptions opts;
            opts.budget = budget;
            opts.subdivision_exponent = subdiv;
            const Tower t = build_tower(b, depth, opts);

            results["block"] = b.name;
            results["depth_requested"] = depth;
            results["depth_built"] = t.depth();
            results["complete"] = t.complete;
            if (!t.complete) results["budget_note"] = t.budget_note;
            results["budget"] = budget;
            results["subdivision_exponent"] = subdiv;
            Json stages = Json::array();
            for (std::size_t i = 0; i < t.stages.size(); ++i) {
                Json s;
                s["stage"] = i;
                const Json sizes = detail::counts_json(*t.stages[i].complex);
                for (const auto& item : sizes.items()) s[item.key()] = item.value();
                stages.push_back(s);
            }
            results["stages"] = stages;
            provenance.push_back(Json{{"quantity", "results.stages"},
                                      {"operation", "build_tower"},
                                      {"inputs", b.name},
                                      {"depth", t.depth()}});

            const MarkovClassTable table = markov_classes(t);
            Json rows = Json::array();
            for (const auto& [face, counts] : table.counts)
                rows.push_back(Json{{"face", face}, {"counts", counts}});
            results["classes"] = Json{{"count", table.class_count()}, {"rows", rows}};
            provenance.push_back(Json{{"quantity", "results.classes"},
                                      {"operation", "markov_classes"},
                                      {"inputs", b.name},
                                      {"depth", t.depth()}});

            if (!scans.empty()) {
                Json sc = Json::array();
                bool inconclusive = false;
                for (std::size_t i = 0; i < scans.size(); ++i) {
                    const detail::ScanSpec& spec = scans[i];
                    Json one;
                    one["m"] = spec.m;
                    one["coefficients"] = spec.r.to_string();
                    one["l"] = spec.l;
                    one["depth"] = t.depth();
                    try {
                        const auto k = scan_star_condition(t, spec.l, spec.m, spec.r);
                        if (k) {
                            one["k"] = *k;
                            one["verdict"] = "holds";
                        } else {
                            one["k"] = nullptr;
                            one["verdict"] = "none within depth";
                            inconclusive = true;
                        }
                    } catch (const std::invalid_argument& e) {
                        // a budget-shortened tower may be too shallow to scan;
                        // anything else is a caller error
                        if (t.complete) throw;
                        one["k"] = nullptr;
                        one["verdict"] = std::string("error: ") + e.what();
                    }
                    sc.push_back(one);
                    provenance.push_back(
                        Json{{"quantity", "results.scans[" + std::to_string(i) + "]"},
                             {"operation", "scan_star_condition"},
                             {"inputs", b.name},
                             {"depth", t.depth()},
                             {"l", spec.l},
                             {"m", spec.m},
                             {"coefficients", spec.r.to_string()}});
                }
                results["scans"] = sc;
                if (inconclusive) exit_code = 2;
            }

            const int base = std::clamp(mesh_stage, 0, t.depth());
            results["mesh_proxy"] = Json{{"base_stage", base}, {"values", mesh_proxy(t, base)}};
            provenance.push_back(Json{{"quantity", "results.mesh_proxy"},
                                      {"operation", "mesh_proxy"},
                                      {"inputs", b.name},
                                      {"depth", t.depth()},
                                      {"base_stage", base}});

            if (!t.complete) exit_code = 3;
        }

        Json envelope;
        envelope["command"] = echoed;
        envelope["engine"] = Json{{"name", "markovcd"}, {"version", "0.1.0"}};
        envelope["provenance"] = provenance;
        envelope["results"] = results;
        const std::string payload = envelope.dump(2) + "\n";
        out << payload;
        if (!out_file.empty()) detail::write_report(out_file, envelope, payload);
        return exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace markov

#endif
