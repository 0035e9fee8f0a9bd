#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "rategraph/errors.hpp"
#include "rategraph/io.hpp"

using namespace rategraph;
using nlohmann::json;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const std::string command = std::string(RATEGRAPH_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp_instance(const json& doc, const std::string& name) {
    const std::string path = std::string("cli_test_") + name + ".json";
    std::ofstream out(path);
    out << doc.dump();
    return path;
}

}  // namespace

TEST_CASE("instance parsing and round trips") {
    const json doc = {{"type", "complete"}, {"n", 3}, {"rates", {"1/2", 2, 0.25}}};
    const Instance instance = parse_instance(doc);
    REQUIRE(instance.is_complete());
    CHECK(instance.complete().rate(0, 1) == Rational(1, 2));
    CHECK(instance.complete().rate(1, 2) == Rational(1, 4));

    const json normalized = instance_to_json(instance);
    CHECK(normalized == instance_to_json(parse_instance(normalized)));

    const json unit = {{"type", "bipartite"}, {"m", 2}, {"n", 3}, {"rates", "unit"}};
    const Instance board = parse_instance(unit);
    CHECK(board.unit_rates);
    CHECK(instance_to_json(board) == unit);
    CHECK(instance_to_json(parse_instance(instance_to_json(board))) == unit);
}

TEST_CASE("instance errors name the offending field") {
    auto message_of = [](const json& doc) {
        try {
            parse_instance(doc);
            return std::string();
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
    };
    CHECK(message_of({{"type", "circle"}, {"n", 3}, {"rates", "unit"}}).starts_with("type"));
    CHECK(message_of({{"type", "complete"}, {"rates", "unit"}}).starts_with("n"));
    CHECK(message_of({{"type", "complete"}, {"n", 3}, {"rates", {1, 2}}}).starts_with("rates"));
    CHECK(message_of({{"type", "complete"}, {"n", 3}, {"rates", {1, 2, -3}}})
              .starts_with("rates[2]"));
    CHECK(message_of({{"type", "bipartite"}, {"m", 2}, {"n", 2}, {"rates", {{1, 2}, {3}}}})
              .starts_with("rates[1]"));
    CHECK(message_of({{"type", "bipartite"}, {"m", 2}, {"n", 2}, {"rates", {{1, 2}, {3, "x"}}}})
              .starts_with("rates[1][1]"));
}

TEST_CASE("cli computes the published unit-rate values") {
    auto result = run_cli("forest-length --unit --n 3 --k 1");
    CHECK(result.exit_code == 0);
    json doc = json::parse(result.output);
    CHECK(doc["exact"] == "7/6");
    CHECK(doc["statistic"] == "forest-length");
    CHECK(doc["mode"] == "exact");
    CHECK(doc["float"].get<double>() == doctest::Approx(7.0 / 6.0).epsilon(1e-12));

    result = run_cli("assignment-time --unit --m 2 --n 2 --k 2");
    CHECK(result.exit_code == 0);
    CHECK(json::parse(result.output)["exact"] == "11/12");

    result = run_cli("assignment-length2 --unit --m 2 --n 2 --which both");
    CHECK(result.exit_code == 0);
    doc = json::parse(result.output);
    CHECK(doc["exact_v1"] == "5/4");
    CHECK(doc["exact_v2"] == "5/4");
    CHECK(doc["equal"] == true);
}

TEST_CASE("cli reads instance files and both modes agree") {
    const json doc = {{"type", "complete"}, {"n", 4}, {"rates", {"1/2", 2, 3, 1, "5/3", 4}}};
    const std::string path = write_temp_instance(doc, "weighted");

    const auto exact = run_cli("forest-time --input " + path + " --k 2");
    REQUIRE(exact.exit_code == 0);
    const auto floated = run_cli("forest-time --input " + path + " --k 2 --mode float");
    REQUIRE(floated.exit_code == 0);

    const double a = json::parse(exact.output)["float"].get<double>();
    const double b = json::parse(floated.output)["float"].get<double>();
    CHECK(std::abs(a - b) <= 1e-9 * std::abs(a));
    CHECK_FALSE(json::parse(floated.output).contains("exact"));
    std::remove(path.c_str());
}

TEST_CASE("cli oracle and simulate") {
    auto result = run_cli("oracle --stat assignment-time --unit --m 2 --n 3 --k 2");
    CHECK(result.exit_code == 0);
    CHECK(json::parse(result.output)["exact"] == "11/20");

    result = run_cli("simulate --stat forest-time --unit --n 3 --k 1 --trials 2000 --seed 5");
    CHECK(result.exit_code == 0);
    const json sim = json::parse(result.output);
    CHECK(sim["trials"] == 2000);
    CHECK(sim["seed"] == 5);
    const double mean = sim["mean"].get<double>();
    const double se = sim["std_error"].get<double>();
    CHECK(std::abs(mean - 5.0 / 6.0) <= 5 * se);

    // identical invocation, identical bytes
    const auto repeat =
        run_cli("simulate --stat forest-time --unit --n 3 --k 1 --trials 2000 --seed 5");
    CHECK(repeat.output == result.output);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("forest-time --unit --n 3 --k 9").exit_code == 2);       // bad k
    CHECK(run_cli("forest-time --unit --n 20 --k 2").exit_code == 3);      // enumeration cap
    CHECK(run_cli("forest-time --unit --n 20 --k 1").exit_code == 0);      // partition fast path
    CHECK(run_cli("forest-time --n 3 --k 1").exit_code == 2);              // no rates given
    CHECK(run_cli("oracle --stat forest-time --unit --n 7 --k 1").exit_code == 3);
    CHECK(run_cli("assignment-time --unit --m 2 --n 2 --k 3").exit_code == 2);
    CHECK(run_cli("verify --suite no-such-suite").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    const json bad = {{"type", "complete"}, {"n", 3}, {"rates", {1, 2, "x"}}};
    const std::string path = write_temp_instance(bad, "malformed");
    CHECK(run_cli("forest-time --input " + path + " --k 1").exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("cli verify and zeta-table") {
    auto result = run_cli("verify --suite stirling");
    CHECK(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["failed"] == 0);
    CHECK(doc["checks"].size() == 4);

    result = run_cli("zeta-table --cap 5");
    CHECK(result.exit_code == 0);
    const json table = json::parse(result.output);
    REQUIRE(table["rows"].size() == 3);
    CHECK(table["rows"][0]["exact"] == "7/6");
    CHECK(table["rows"][1]["exact"] == "73/60");
}
