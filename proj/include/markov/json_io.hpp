#ifndef MARKOV_JSON_IO_HPP
#define MARKOV_JSON_IO_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "markov/simplicial_complex.hpp"
#include "markov/simplicial_map.hpp"

namespace markov {

/// Insertion order is kept, so identical inputs serialize to identical bytes.
using Json = nlohmann::ordered_json;

/// {"vertices":[ids],"maximal_simplices":[[ids],...]}, both sorted.
inline Json complex_to_json(const SimplicialComplex& k) {
    Json j;
    std::vector<int> vertices(k.vertex_count());
    for (int v = 0; v < k.vertex_count(); ++v) vertices[v] = v;
    j["vertices"] = vertices;
    std::vector<Simplex> tops = k.maximal_simplices();
    std::sort(tops.begin(), tops.end());
    j["maximal_simplices"] = tops;
    return j;
}

/**
 * Reads the schema above. Vertex ids must be distinct and dense from zero;
 * every simplex entry must name a listed vertex, without repeats. The face
 * closure is rebuilt, so listing non-maximal simplices is harmless.
 */
inline SimplicialComplex complex_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("maximal_simplices"))
        throw std::invalid_argument(
            "complex json: object with vertices and maximal_simplices required");
    if (!j["vertices"].is_array() || !j["maximal_simplices"].is_array())
        throw std::invalid_argument("complex json: vertices and maximal_simplices are arrays");

    std::set<long long> ids;
    for (const Json& v : j["vertices"]) {
        if (!v.is_number_integer())
            throw std::invalid_argument("complex json: vertex ids are integers");
        if (!ids.insert(v.get<long long>()).second)
            throw std::invalid_argument("complex json: duplicate vertex id");
    }
    const long long count = static_cast<long long>(ids.size());
    if (count == 0) throw std::invalid_argument("complex json: no vertices");
    if (*ids.begin() != 0 || *ids.rbegin() != count - 1)
        throw std::invalid_argument("complex json: vertex ids must be dense from 0");

    std::vector<Simplex> gens;
    for (long long v = 0; v < count; ++v) gens.push_back({static_cast<int>(v)});
    for (const Json& entry : j["maximal_simplices"]) {
        if (!entry.is_array() || entry.empty())
            throw std::invalid_argument("complex json: simplices are nonempty arrays");
        Simplex s;
        std::set<long long> seen;
        for (const Json& v : entry) {
            if (!v.is_number_integer() || !ids.count(v.get<long long>()))
                throw std::invalid_argument("complex json: simplex names an unknown vertex");
            if (!seen.insert(v.get<long long>()).second)
                throw std::invalid_argument("complex json: repeated vertex in a simplex");
            s.push_back(v.get<int>());
        }
        gens.push_back(sorted_simplex(std::move(s)));
    }
    return SimplicialComplex::from_maximal(gens);
}

/// {"domain":complex,"codomain":complex,"vertex_map":{"0":3,...}}.
inline Json map_to_json(const SimplicialMap& f) {
    Json j;
    j["domain"] = complex_to_json(*f.domain());
    j["codomain"] = complex_to_json(*f.codomain());
    Json vm = Json::object();
    for (int v = 0; v < f.domain()->vertex_count(); ++v) vm[std::to_string(v)] = f(v);
    j["vertex_map"] = vm;
    return j;
}

/// Reads the schema above and verifies simpliciality on construction.
inline SimplicialMap map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") ||
        !j.contains("vertex_map"))
        throw std::invalid_argument("map json: domain, codomain and vertex_map required");
    ComplexPtr domain = make_complex(complex_from_json(j["domain"]));
    ComplexPtr codomain = make_complex(complex_from_json(j["codomain"]));
    if (!j["vertex_map"].is_object())
        throw std::invalid_argument("map json: vertex_map is an object keyed by vertex id");
    std::vector<int> vm(domain->vertex_count(), -1);
    for (const auto& [key, value] : j["vertex_map"].items()) {
        long long v = 0;
        try {
            v = std::stoll(key);
        } catch (const std::exception&) {
            throw std::invalid_argument("map json: vertex_map key is not a vertex id");
        }
        if (v < 0 || v >= domain->vertex_count())
            throw std::invalid_argument("map json: vertex_map key outside the domain");
        if (!value.is_number_integer())
            throw std::invalid_argument("map json: vertex images are integers");
        vm[v] = value.get<int>();
    }
    for (int v = 0; v < domain->vertex_count(); ++v)
        if (vm[v] < 0)
            throw std::invalid_argument("map json: vertex " + std::to_string(v) +
                                        " has no image");
    return SimplicialMap(std::move(domain), std::move(codomain), std::move(vm));
}

}  // namespace markov

#endif
