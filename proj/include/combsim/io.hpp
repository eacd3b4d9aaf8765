#pragma once

// JSON (de)serialization for the document kinds the CLI accepts, plus
// verdict/witness emission. All parse failures surface as std::invalid_argument.

#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <string>

#include "mapkit.hpp"
#include "pmetric.hpp"
#include "relcore.hpp"
#include "semigrp.hpp"
#include "simdec.hpp"

namespace combsim::io {

using json = nlohmann::json;

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

inline std::string kind_of(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("document has no \"kind\" field");
    return j["kind"].get<std::string>();
}

namespace detail {
inline int get_int(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw std::invalid_argument(std::string("missing or non-integer field \"") + field + '"');
    return j[field].get<int>();
}
}  // namespace detail

// {"kind":"mapping","n":N,"table":[["a0","a1",...],...]}
inline SymMapping mapping_from_json(const json& j) {
    if (kind_of(j) != "mapping") throw std::invalid_argument("expected kind \"mapping\"");
    const int n = detail::get_int(j, "n");
    GroundSet g(n);
    if (!j.contains("table") || !j["table"].is_array() ||
        static_cast<int>(j["table"].size()) != n)
        throw std::invalid_argument("mapping table must be an n x n array");
    std::vector<std::string> labels;
    std::vector<int> table(n * n);
    auto intern = [&](const std::string& s) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return static_cast<int>(i);
        labels.push_back(s);
        return static_cast<int>(labels.size()) - 1;
    };
    for (int x = 0; x < n; ++x) {
        const json& row = j["table"][x];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("mapping table must be an n x n array");
        for (int y = 0; y < n; ++y) {
            if (!row[y].is_string())
                throw std::invalid_argument("mapping symbols must be strings");
            table[x * n + y] = intern(row[y].get<std::string>());
        }
    }
    return SymMapping(g, SymbolAlphabet(std::move(labels)), std::move(table));
}

inline json mapping_to_json(const SymMapping& phi) {
    json table = json::array();
    for (int x = 0; x < phi.size(); ++x) {
        json row = json::array();
        for (int y = 0; y < phi.size(); ++y)
            row.push_back(phi.alphabet().label(phi.at(x, y)));
        table.push_back(std::move(row));
    }
    return {{"kind", "mapping"}, {"n", phi.size()}, {"table", std::move(table)}};
}

// {"kind":"pseudometric","n":N,"dist":[["0","3/2",...],...]}
inline Pseudometric pseudometric_from_json(const json& j) {
    if (kind_of(j) != "pseudometric") throw std::invalid_argument("expected kind \"pseudometric\"");
    const int n = detail::get_int(j, "n");
    GroundSet g(n);
    if (!j.contains("dist") || !j["dist"].is_array() ||
        static_cast<int>(j["dist"].size()) != n)
        throw std::invalid_argument("distance table must be an n x n array");
    std::vector<Rational> dist(n * n);
    for (int x = 0; x < n; ++x) {
        const json& row = j["dist"][x];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("distance table must be an n x n array");
        for (int y = 0; y < n; ++y) {
            if (!row[y].is_string())
                throw std::invalid_argument("distances must be rational strings like \"3/2\"");
            dist[x * n + y] = parse_rational(row[y].get<std::string>());
        }
    }
    return Pseudometric::require(g, std::move(dist));
}

inline json pseudometric_to_json(const Pseudometric& d) {
    json dist = json::array();
    for (int x = 0; x < d.size(); ++x) {
        json row = json::array();
        for (int y = 0; y < d.size(); ++y) row.push_back(to_string(d.at(x, y)));
        dist.push_back(std::move(row));
    }
    return {{"kind", "pseudometric"}, {"n", d.size()}, {"dist", std::move(dist)}};
}

// {"kind":"relation","n":N,"pairs":[[x,y],...]}
inline BinaryRelation relation_from_json(const json& j) {
    if (kind_of(j) != "relation") throw std::invalid_argument("expected kind \"relation\"");
    const int n = detail::get_int(j, "n");
    BinaryRelation r{GroundSet(n)};
    if (!j.contains("pairs") || !j["pairs"].is_array())
        throw std::invalid_argument("relation needs a \"pairs\" array");
    for (const json& p : j["pairs"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer())
            throw std::invalid_argument("relation pairs must be [x, y] integer pairs");
        const int x = p[0].get<int>(), y = p[1].get<int>();
        if (x < 0 || x >= n || y < 0 || y >= n)
            throw std::invalid_argument("relation pair out of range");
        r.add(x, y);
    }
    return r;
}

inline json relation_to_json(const BinaryRelation& r) {
    json pairs = json::array();
    for (int x = 0; x < r.ground().n; ++x)
        for (int y = 0; y < r.ground().n; ++y)
            if (r.contains(x, y)) pairs.push_back(json::array({x, y}));
    return {{"kind", "relation"}, {"n", r.ground().n}, {"pairs", std::move(pairs)}};
}

// {"kind":"partition","n":N,"blocks":[[...],...]}
inline Partition partition_from_json(const json& j) {
    if (kind_of(j) != "partition") throw std::invalid_argument("expected kind \"partition\"");
    const int n = detail::get_int(j, "n");
    if (!j.contains("blocks") || !j["blocks"].is_array())
        throw std::invalid_argument("partition needs a \"blocks\" array");
    std::vector<std::vector<int>> blocks;
    for (const json& b : j["blocks"]) {
        if (!b.is_array()) throw std::invalid_argument("partition blocks must be arrays");
        std::vector<int> block;
        for (const json& v : b) {
            if (!v.is_number_integer())
                throw std::invalid_argument("partition block entries must be integers");
            block.push_back(v.get<int>());
        }
        blocks.push_back(std::move(block));
    }
    return Partition(GroundSet(n), std::move(blocks));
}

inline json partition_to_json(const Partition& p) {
    json blocks = json::array();
    for (const auto& b : p.blocks()) blocks.push_back(b);
    return {{"kind", "partition"}, {"n", p.ground().n}, {"blocks", std::move(blocks)}};
}

// {"kind":"semigroup","order":k,"cayley":[[...],...]}
inline FiniteSemigroup semigroup_from_json(const json& j) {
    if (kind_of(j) != "semigroup") throw std::invalid_argument("expected kind \"semigroup\"");
    const int k = detail::get_int(j, "order");
    if (k < 1) throw std::invalid_argument("semigroup order must be positive");
    if (!j.contains("cayley") || !j["cayley"].is_array() ||
        static_cast<int>(j["cayley"].size()) != k)
        throw std::invalid_argument("Cayley table must be a k x k array");
    std::vector<int> cayley(k * k);
    for (int a = 0; a < k; ++a) {
        const json& row = j["cayley"][a];
        if (!row.is_array() || static_cast<int>(row.size()) != k)
            throw std::invalid_argument("Cayley table must be a k x k array");
        for (int b = 0; b < k; ++b) {
            if (!row[b].is_number_integer())
                throw std::invalid_argument("Cayley entries must be integers");
            cayley[a * k + b] = row[b].get<int>();
        }
    }
    try {
        return FiniteSemigroup(k, std::move(cayley));
    } catch (const std::logic_error& e) {
        throw std::invalid_argument(e.what());
    }
}

inline json semigroup_to_json(const FiniteSemigroup& s) {
    json cayley = json::array();
    for (int a = 0; a < s.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < s.order(); ++b) row.push_back(s.mul(a, b));
        cayley.push_back(std::move(row));
    }
    return {{"kind", "semigroup"}, {"order", s.order()}, {"cayley", std::move(cayley)}};
}

inline json semigroup_to_json(const RelationSemigroup& s) {
    json out = semigroup_to_json(s.abstract());
    json elements = json::array();
    for (const auto& r : s.elements) elements.push_back(relation_to_json(r));
    out["elements"] = std::move(elements);
    out["generators"] = s.generators;
    return out;
}

}  // namespace combsim::io
