#include "rategraph/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rategraph/errors.hpp"

namespace rategraph {

namespace {

Rational parse_rate(const nlohmann::json& value, const std::string& field) {
    Rational rate;
    if (value.is_string()) {
        try {
            rate = parse_rational(value.get<std::string>());
        } catch (const ValidationError& e) {
            throw ValidationError(field + ": " + e.what());
        }
    } else if (value.is_number_integer()) {
        rate = Rational(value.get<long long>());
    } else if (value.is_number_float()) {
        const double d = value.get<double>();
        if (!std::isfinite(d)) {
            throw ValidationError(field + ": rate must be finite");
        }
        rate = Rational(d);  // exact binary value of the double
    } else {
        throw ValidationError(field + ": rate must be a number or a \"p/q\" string");
    }
    if (rate < 0) {
        throw ValidationError(field + ": rate must be nonnegative");
    }
    return rate;
}

// 1024 is far beyond anything the enumeration caps admit, but keeps a typo
// from materializing a quadratic rate table.
constexpr long long kMaxDimension = 1024;

int parse_dimension(const nlohmann::json& doc, const std::string& field) {
    if (!doc.contains(field) || !doc[field].is_number_integer()) {
        throw ValidationError(field + ": expected a positive integer");
    }
    const long long value = doc[field].get<long long>();
    if (value < 1 || value > kMaxDimension) {
        throw ValidationError(field + ": expected a positive integer at most " +
                              std::to_string(kMaxDimension));
    }
    return static_cast<int>(value);
}

}  // namespace

Instance parse_instance(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ValidationError("instance: expected a JSON object");
    }
    if (!doc.contains("type") || !doc["type"].is_string()) {
        throw ValidationError("type: expected \"complete\" or \"bipartite\"");
    }
    const std::string type = doc["type"].get<std::string>();
    if (type != "complete" && type != "bipartite") {
        throw ValidationError("type: expected \"complete\" or \"bipartite\"");
    }
    if (!doc.contains("rates")) {
        throw ValidationError("rates: missing");
    }
    const nlohmann::json& rates = doc["rates"];
    const bool unit = rates.is_string();
    if (unit && rates.get<std::string>() != "unit") {
        throw ValidationError("rates: the only string form is \"unit\"");
    }

    if (type == "complete") {
        const int n = parse_dimension(doc, "n");
        if (unit) {
            return Instance{CompleteRateGraph::unit(n), true};
        }
        if (!rates.is_array()) {
            throw ValidationError("rates: expected \"unit\" or an array");
        }
        const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
        if (rates.size() != expected) {
            throw ValidationError("rates: expected " + std::to_string(expected) +
                                  " upper-triangle entries for n = " + std::to_string(n));
        }
        std::vector<Rational> parsed;
        parsed.reserve(expected);
        for (std::size_t i = 0; i < rates.size(); ++i) {
            parsed.push_back(parse_rate(rates[i], "rates[" + std::to_string(i) + "]"));
        }
        return Instance{CompleteRateGraph(n, std::move(parsed)), false};
    }

    const int m = parse_dimension(doc, "m");
    const int n = parse_dimension(doc, "n");
    if (unit) {
        return Instance{BipartiteRateGraph::unit(m, n), true};
    }
    if (!rates.is_array() || static_cast<int>(rates.size()) != m) {
        throw ValidationError("rates: expected \"unit\" or an array of " + std::to_string(m) +
                              " rows");
    }
    std::vector<Rational> parsed;
    parsed.reserve(static_cast<std::size_t>(m) * n);
    for (int r = 0; r < m; ++r) {
        const nlohmann::json& row = rates[r];
        const std::string row_field = "rates[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ValidationError(row_field + ": expected " + std::to_string(n) + " entries");
        }
        for (int c = 0; c < n; ++c) {
            parsed.push_back(parse_rate(row[c], row_field + "[" + std::to_string(c) + "]"));
        }
    }
    return Instance{BipartiteRateGraph(m, n, std::move(parsed)), false};
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("input: cannot open \"" + path + "\"");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("input: malformed JSON in \"" + path + "\": " + e.what());
    }
    return parse_instance(doc);
}

nlohmann::json instance_to_json(const Instance& instance) {
    nlohmann::json doc;
    if (instance.is_complete()) {
        const CompleteRateGraph& graph = instance.complete();
        doc["type"] = "complete";
        doc["n"] = graph.vertex_count();
        if (instance.unit_rates) {
            doc["rates"] = "unit";
        } else {
            nlohmann::json rates = nlohmann::json::array();
            for (const Rational& r : graph.rates()) {
                rates.push_back(to_string(r));
            }
            doc["rates"] = std::move(rates);
        }
        return doc;
    }
    const BipartiteRateGraph& graph = instance.bipartite();
    doc["type"] = "bipartite";
    doc["m"] = graph.rows();
    doc["n"] = graph.cols();
    if (instance.unit_rates) {
        doc["rates"] = "unit";
    } else {
        nlohmann::json rates = nlohmann::json::array();
        for (int r = 0; r < graph.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < graph.cols(); ++c) {
                row.push_back(to_string(graph.rate(r, c)));
            }
            rates.push_back(std::move(row));
        }
        doc["rates"] = std::move(rates);
    }
    return doc;
}

}  // namespace rategraph
