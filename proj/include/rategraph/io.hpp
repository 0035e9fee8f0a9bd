#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "rategraph/graph.hpp"

namespace rategraph {

// Parsed instance file. "unit" rates are remembered so the unit-rate fast
// paths can be taken and round-tripping is idempotent.
struct Instance {
    std::variant<CompleteRateGraph, BipartiteRateGraph> graph;
    bool unit_rates = false;

    bool is_complete() const { return std::holds_alternative<CompleteRateGraph>(graph); }
    const CompleteRateGraph& complete() const { return std::get<CompleteRateGraph>(graph); }
    const BipartiteRateGraph& bipartite() const { return std::get<BipartiteRateGraph>(graph); }
};

// Schema:
//   {"type": "complete",  "n": 3,           "rates": "unit" | [r, ...]}
//   {"type": "bipartite", "m": 2, "n": 3,   "rates": "unit" | [[r, ...], ...]}
// Complete-graph rates are the upper triangle in lexicographic (i, j) order;
// bipartite rates are a row-major matrix. Each rate is a nonnegative JSON
// number or an exact string "p/q". Errors name the offending field.
Instance parse_instance(const nlohmann::json& doc);
Instance load_instance_file(const std::string& path);

// Rationals serialize as strings so nothing is rounded.
nlohmann::json instance_to_json(const Instance& instance);

}  // namespace rategraph
