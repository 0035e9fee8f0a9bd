#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rategraph/assignment.hpp"
#include "rategraph/errors.hpp"
#include "rategraph/forest.hpp"
#include "rategraph/io.hpp"
#include "rategraph/oracles.hpp"
#include "rategraph/verify.hpp"

namespace {

using nlohmann::json;
using namespace rategraph;

constexpr double kZeta3 = 1.2020569031595942854;

struct InstanceFlags {
    std::string input;
    bool unit = false;
    int n = 0;
    int m = 0;
};

struct ComputeFlags {
    InstanceFlags instance;
    int k = 1;
    std::string mode = "exact";
    int cap = 0;
    int threads = 1;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags, bool bipartite) {
    cmd->add_option("--input", flags.input, "instance file (JSON)");
    cmd->add_flag("--unit", flags.unit, "unit rates");
    cmd->add_option("--n", flags.n, "vertex count (complete) or column count (bipartite)");
    if (bipartite) {
        cmd->add_option("--m", flags.m, "row count (bipartite)");
    }
}

void add_compute_flags(CLI::App* cmd, ComputeFlags& flags, bool bipartite, bool with_k = true) {
    add_instance_flags(cmd, flags.instance, bipartite);
    if (with_k) {
        cmd->add_option("--k", flags.k, "target size k");
    }
    cmd->add_option("--mode", flags.mode, "exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--cap", flags.cap, "enumeration cap override");
    cmd->add_option("--threads", flags.threads, "worker threads for the enumeration sums")
        ->check(CLI::PositiveNumber);
}

Instance resolve_instance(const InstanceFlags& flags, bool bipartite) {
    if (!flags.input.empty()) {
        if (flags.unit || flags.n != 0 || flags.m != 0) {
            throw ValidationError("input: --input excludes --unit/--n/--m");
        }
        Instance instance = load_instance_file(flags.input);
        if (instance.is_complete() == bipartite) {
            throw ValidationError(std::string("input: expected a ") +
                                  (bipartite ? "bipartite" : "complete") + " instance");
        }
        return instance;
    }
    if (!flags.unit) {
        throw ValidationError("input: provide --input FILE or --unit with dimensions");
    }
    constexpr int kMaxUnitDimension = 1024;
    if (bipartite) {
        if (flags.m < 1 || flags.n < 1) {
            throw ValidationError("input: --unit needs --m and --n for bipartite statistics");
        }
        if (flags.m > kMaxUnitDimension || flags.n > kMaxUnitDimension) {
            throw ValidationError("input: dimensions above 1024 are not supported");
        }
        return Instance{BipartiteRateGraph::unit(flags.m, flags.n), true};
    }
    if (flags.n < 1) {
        throw ValidationError("input: --unit needs --n for forest statistics");
    }
    if (flags.n > kMaxUnitDimension) {
        throw ValidationError("input: dimensions above 1024 are not supported");
    }
    return Instance{CompleteRateGraph::unit(flags.n), true};
}

void emit(const json& doc) {
    std::cout << doc.dump(2) << "\n";
}

json value_document(const std::string& statistic, int k, const std::string& mode,
                    const std::optional<Rational>& exact, double value, long long terms) {
    json doc;
    doc["statistic"] = statistic;
    doc["k"] = k;
    if (exact) {
        doc["exact"] = to_string(*exact);
        doc["float"] = to_double(*exact);
    } else {
        doc["float"] = value;
    }
    doc["term_count"] = terms;
    doc["mode"] = mode;
    return doc;
}

int run_forest(const std::string& statistic, const ComputeFlags& flags) {
    const Instance instance = resolve_instance(flags.instance, /*bipartite=*/false);
    const CompleteRateGraph& graph = instance.complete();
    const bool length = statistic == "forest-length";

    long long terms = 0;
    SumOptions options{flags.cap, flags.threads, &terms};

    // Unit rates with k = 1 take the integer-partition fast path.
    const bool fast_path = instance.unit_rates && flags.k == 1;
    std::optional<Rational> exact;
    double value = 0.0;
    if (flags.mode == "exact") {
        if (fast_path) {
            exact = length ? unit_rate_length<Rational>(graph.vertex_count(), options)
                           : unit_rate_time<Rational>(graph.vertex_count(), options);
        } else {
            exact = length ? expected_min_forest_length<Rational>(graph, flags.k, options)
                           : expected_time_to_k_components<Rational>(graph, flags.k, options);
        }
    } else {
        if (fast_path) {
            value = length ? unit_rate_length<double>(graph.vertex_count(), options)
                           : unit_rate_time<double>(graph.vertex_count(), options);
        } else {
            value = length ? expected_min_forest_length<double>(graph, flags.k, options)
                           : expected_time_to_k_components<double>(graph, flags.k, options);
        }
    }
    emit(value_document(statistic, flags.k, flags.mode, exact, value, terms));
    return 0;
}

int run_assignment_time(const ComputeFlags& flags) {
    const Instance instance = resolve_instance(flags.instance, /*bipartite=*/true);
    const BipartiteRateGraph& graph = instance.bipartite();

    long long terms = 0;
    SumOptions options{flags.cap, flags.threads, &terms};
    std::optional<Rational> exact;
    double value = 0.0;
    if (flags.mode == "exact") {
        exact = expected_time_to_k_assignment<Rational>(graph, flags.k, options);
    } else {
        value = expected_time_to_k_assignment<double>(graph, flags.k, options);
    }
    emit(value_document("assignment-time", flags.k, flags.mode, exact, value, terms));
    return 0;
}

int run_assignment_length2(const ComputeFlags& flags, const std::string& which) {
    const Instance instance = resolve_instance(flags.instance, /*bipartite=*/true);
    const BipartiteRateGraph& graph = instance.bipartite();

    json doc;
    doc["statistic"] = "assignment-length2";
    doc["k"] = 2;
    doc["which"] = which;
    doc["mode"] = flags.mode;

    long long total_terms = 0;
    auto compute = [&](bool v1) {
        long long terms = 0;
        SumOptions options{flags.cap, flags.threads, &terms};
        json entry;
        if (flags.mode == "exact") {
            const Rational value =
                v1 ? expected_min_2assignment_length_v1<Rational>(graph, options)
                   : expected_min_2assignment_length_v2<Rational>(graph, options);
            entry["exact"] = to_string(value);
            entry["float"] = to_double(value);
        } else {
            entry["float"] = v1 ? expected_min_2assignment_length_v1<double>(graph, options)
                                : expected_min_2assignment_length_v2<double>(graph, options);
        }
        total_terms += terms;
        return entry;
    };

    if (which == "v1" || which == "both") {
        const json entry = compute(true);
        doc["exact_v1"] = entry.contains("exact") ? entry["exact"] : json();
        doc["float_v1"] = entry["float"];
    }
    if (which == "v2" || which == "both") {
        const json entry = compute(false);
        doc["exact_v2"] = entry.contains("exact") ? entry["exact"] : json();
        doc["float_v2"] = entry["float"];
    }
    if (which == "both" && flags.mode == "exact") {
        doc["equal"] = doc["exact_v1"] == doc["exact_v2"];
    }
    doc["term_count"] = total_terms;
    emit(doc);
    return 0;
}

int run_oracle(const std::string& stat, const ComputeFlags& flags) {
    const bool bipartite = stat == "assignment-time";
    const Instance instance = resolve_instance(flags.instance, bipartite);

    Rational value;
    if (stat == "forest-time") {
        value = lattice_dp_expected_time(instance.complete(), flags.k);
    } else if (stat == "forest-length") {
        value = lattice_dp_expected_forest_length(instance.complete(), flags.k);
    } else {
        value = lattice_dp_expected_time(instance.bipartite(), flags.k);
    }
    json doc;
    doc["statistic"] = "oracle";
    doc["stat"] = stat;
    doc["k"] = flags.k;
    doc["exact"] = to_string(value);
    doc["float"] = to_double(value);
    doc["mode"] = "exact";
    emit(doc);
    return 0;
}

int run_simulate(const std::string& stat, const ComputeFlags& flags, long long trials,
                 std::uint64_t seed) {
    const bool bipartite = stat == "assignment-time" || stat == "assignment-length";
    const Instance instance = resolve_instance(flags.instance, bipartite);

    SimulationConfig config;
    config.k = flags.k;
    config.trials = trials;
    config.seed = seed;
    config.threads = flags.threads;
    if (stat == "forest-time") {
        config.statistic = Statistic::forest_time;
    } else if (stat == "forest-length") {
        config.statistic = Statistic::forest_length;
    } else if (stat == "assignment-time") {
        config.statistic = Statistic::assignment_time;
    } else {
        config.statistic = Statistic::assignment_length;
    }

    const SimulationResult result = bipartite ? monte_carlo(instance.bipartite(), config)
                                              : monte_carlo(instance.complete(), config);
    json doc;
    doc["statistic"] = "simulate";
    doc["stat"] = stat;
    doc["k"] = flags.k;
    doc["mean"] = result.mean;
    doc["std_error"] = result.std_error;
    doc["trials"] = result.trials;
    doc["seed"] = result.seed;
    doc["mode"] = "float";
    emit(doc);
    return 0;
}

int run_verify(const std::string& suite) {
    const auto results = verify::run_suite(suite);
    json checks = json::array();
    int failed = 0;
    for (const auto& result : results) {
        json entry;
        entry["name"] = result.name;
        entry["pass"] = result.passed;
        if (!result.detail.empty()) {
            entry["detail"] = result.detail;
        }
        checks.push_back(std::move(entry));
        if (!result.passed) {
            ++failed;
        }
        std::cerr << (result.passed ? "PASS " : "FAIL ") << result.name
                  << (result.detail.empty() ? "" : ": " + result.detail) << "\n";
    }
    json doc;
    doc["statistic"] = "verify";
    doc["suite"] = suite;
    doc["checks"] = std::move(checks);
    doc["failed"] = failed;
    emit(doc);
    return failed == 0 ? 0 : 1;
}

int run_zeta_table(int cap) {
    if (cap < 3) {
        throw ValidationError("zeta-table: --cap must be at least 3");
    }
    json rows = json::array();
    for (int n = 3; n <= cap; ++n) {
        long long terms = 0;
        SumOptions options{0, 1, &terms};
        const Rational exact = unit_rate_length<Rational>(n, options);
        const double approx = unit_rate_length<double>(n, options);
        json row;
        row["n"] = n;
        row["exact"] = to_string(exact);
        row["float"] = approx;
        row["gap_to_zeta3"] = to_double(exact) - kZeta3;
        row["term_count"] = terms;
        rows.push_back(std::move(row));
    }
    json doc;
    doc["statistic"] = "zeta-table";
    doc["description"] = "unit-rate expected minimal spanning tree length";
    doc["zeta3"] = kZeta3;
    doc["rows"] = std::move(rows);
    emit(doc);
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"exact expectations for rate-labelled random graph and assignment processes"};
    app.require_subcommand(1);

    ComputeFlags forest_time_flags;
    auto* forest_time_cmd =
        app.add_subcommand("forest-time", "expected time until k components remain");
    add_compute_flags(forest_time_cmd, forest_time_flags, false);

    ComputeFlags forest_length_flags;
    auto* forest_length_cmd =
        app.add_subcommand("forest-length", "expected minimal spanning k-forest length");
    add_compute_flags(forest_length_cmd, forest_length_flags, false);

    ComputeFlags assignment_time_flags;
    auto* assignment_time_cmd =
        app.add_subcommand("assignment-time", "expected time until a k-assignment appears");
    add_compute_flags(assignment_time_cmd, assignment_time_flags, true);

    ComputeFlags assignment_length2_flags;
    std::string which = "both";
    auto* assignment_length2_cmd = app.add_subcommand(
        "assignment-length2", "expected minimal 2-assignment length (both closed forms)");
    add_compute_flags(assignment_length2_cmd, assignment_length2_flags, true, /*with_k=*/false);
    assignment_length2_cmd->add_option("--which", which, "v1, v2, or both")
        ->check(CLI::IsMember({"v1", "v2", "both"}));

    ComputeFlags oracle_flags;
    std::string oracle_stat;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "exact expectation via the Boolean-lattice oracle");
    add_compute_flags(oracle_cmd, oracle_flags, true);
    oracle_cmd->add_option("--stat", oracle_stat, "forest-time, forest-length, assignment-time")
        ->required()
        ->check(CLI::IsMember({"forest-time", "forest-length", "assignment-time"}));

    ComputeFlags simulate_flags;
    std::string simulate_stat;
    long long trials = 100000;
    std::uint64_t seed = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "seeded Monte Carlo estimate");
    add_compute_flags(simulate_cmd, simulate_flags, true);
    simulate_cmd
        ->add_option("--stat", simulate_stat,
                     "forest-time, forest-length, assignment-time, assignment-length")
        ->required()
        ->check(CLI::IsMember(
            {"forest-time", "forest-length", "assignment-time", "assignment-length"}));
    simulate_cmd->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", seed, "PRNG seed");

    std::string suite = "all";
    auto* verify_cmd = app.add_subcommand("verify", "run a named property suite");
    verify_cmd->add_option("--suite", suite, "suite name (see README) or \"all\"");

    int zeta_cap = 10;
    auto* zeta_cmd = app.add_subcommand(
        "zeta-table", "unit-rate spanning tree lengths next to the zeta(3) limit");
    zeta_cmd->add_option("--cap", zeta_cap, "largest n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (forest_time_cmd->parsed()) {
        return run_forest("forest-time", forest_time_flags);
    }
    if (forest_length_cmd->parsed()) {
        return run_forest("forest-length", forest_length_flags);
    }
    if (assignment_time_cmd->parsed()) {
        return run_assignment_time(assignment_time_flags);
    }
    if (assignment_length2_cmd->parsed()) {
        return run_assignment_length2(assignment_length2_flags, which);
    }
    if (oracle_cmd->parsed()) {
        return run_oracle(oracle_stat, oracle_flags);
    }
    if (simulate_cmd->parsed()) {
        return run_simulate(simulate_stat, simulate_flags, trials, seed);
    }
    if (verify_cmd->parsed()) {
        return run_verify(suite);
    }
    if (zeta_cmd->parsed()) {
        return run_zeta_table(zeta_cap);
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
