#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rategraph/assignment.hpp"
#include "rategraph/combinatorics.hpp"
#include "rategraph/errors.hpp"
#include "rategraph/forest.hpp"
#include "rategraph/oracles.hpp"

namespace py = pybind11;

namespace {

using namespace rategraph;

py::object to_fraction(const Rational& value) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(value));
}

py::int_ to_py_int(const BigInt& value) {
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(value.str()));
}

Rational rational_from(py::handle value) {
    if (py::isinstance<py::float_>(value)) {
        return Rational(value.cast<double>());  // exact binary value
    }
    return parse_rational(py::str(value).cast<std::string>());
}

std::vector<Rational> rates_from(const py::iterable& values) {
    std::vector<Rational> rates;
    for (py::handle value : values) {
        rates.push_back(rational_from(value));
    }
    return rates;
}

CompleteRateGraph make_complete(int n, const py::object& rates) {
    if (rates.is_none()) {
        return CompleteRateGraph::unit(n);
    }
    return CompleteRateGraph(n, rates_from(rates));
}

BipartiteRateGraph make_bipartite(int rows, int cols, const py::object& rates) {
    if (rates.is_none()) {
        return BipartiteRateGraph::unit(rows, cols);
    }
    return BipartiteRateGraph(rows, cols, rates_from(rates));
}

Statistic statistic_from(const std::string& name) {
    if (name == "forest-time") {
        return Statistic::forest_time;
    }
    if (name == "forest-length") {
        return Statistic::forest_length;
    }
    if (name == "assignment-time") {
        return Statistic::assignment_time;
    }
    if (name == "assignment-length") {
        return Statistic::assignment_length;
    }
    throw InvalidStatistic("unknown statistic \"" + name + "\"");
}

py::dict simulation_dict(const SimulationResult& result) {
    py::dict out;
    out["mean"] = result.mean;
    out["std_error"] = result.std_error;
    out["trials"] = result.trials;
    out["seed"] = result.seed;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact expectations for rate-labelled random graph and assignment processes";

    py::register_exception<UnreachableTarget>(m, "UnreachableTargetError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

    py::class_<CompleteRateGraph>(m, "CompleteRateGraph",
                                  "rate labelling of the complete graph K_n; rates are the "
                                  "upper triangle in lexicographic (i, j) order")
        .def(py::init(&make_complete), py::arg("n"), py::arg("rates") = py::none())
        .def_property_readonly("n", &CompleteRateGraph::vertex_count)
        .def_property_readonly("edge_count", &CompleteRateGraph::edge_count)
        .def("rate", [](const CompleteRateGraph& g, int i, int j) {
            return to_fraction(g.rate(i, j));
        })
        .def("total_rate",
             [](const CompleteRateGraph& g) { return to_fraction(g.total_rate()); });

    py::class_<BipartiteRateGraph>(m, "BipartiteRateGraph",
                                   "rate labelling of K_{m,n}; rates are row-major")
        .def(py::init(&make_bipartite), py::arg("m"), py::arg("n"),
             py::arg("rates") = py::none())
        .def_property_readonly("m", &BipartiteRateGraph::rows)
        .def_property_readonly("n", &BipartiteRateGraph::cols)
        .def("rate", [](const BipartiteRateGraph& g, int r, int c) {
            return to_fraction(g.rate(r, c));
        })
        .def("total_rate",
             [](const BipartiteRateGraph& g) { return to_fraction(g.total_rate()); });

    m.def(
        "binomial", [](long long n, long long k) { return to_py_int(binomial(n, k)); },
        py::arg("n"), py::arg("k"));
    m.def(
        "multinomial",
        [](int n, const std::vector<int>& parts) { return to_py_int(multinomial(n, parts)); },
        py::arg("n"), py::arg("parts"));
    m.def(
        "stirling_tables",
        [](int j_max) {
            const StirlingTables tables(j_max);
            py::list s, tau, lam;
            for (int j = 0; j <= j_max; ++j) {
                py::list s_row, tau_row, lambda_row;
                for (int i = 0; i <= j; ++i) {
                    s_row.append(to_py_int(tables.s(j, i)));
                }
                for (int k = 0; k < j; ++k) {
                    tau_row.append(to_py_int(tables.tau(j, k)));
                    lambda_row.append(to_py_int(tables.lambda(j, k)));
                }
                s.append(s_row);
                tau.append(tau_row);
                lam.append(lambda_row);
            }
            py::dict out;
            out["s"] = s;
            out["tau"] = tau;
            out["lambda"] = lam;
            return out;
        },
        py::arg("j_max"),
        "signed Stirling numbers of the first kind with the derived tau/lambda tables");

    m.def(
        "forest_time",
        [](const CompleteRateGraph& g, int k, int threads) {
            return to_fraction(
                expected_time_to_k_components<Rational>(g, k, SumOptions{0, threads, nullptr}));
        },
        py::arg("graph"), py::arg("k"), py::arg("threads") = 1,
        "expected time until the component count reaches k");
    m.def(
        "forest_length",
        [](const CompleteRateGraph& g, int k, int threads) {
            return to_fraction(
                expected_min_forest_length<Rational>(g, k, SumOptions{0, threads, nullptr}));
        },
        py::arg("graph"), py::arg("k"), py::arg("threads") = 1,
        "expected minimal spanning k-forest length");
    m.def(
        "unit_forest_time",
        [](int n) { return to_fraction(unit_rate_time<Rational>(n)); }, py::arg("n"));
    m.def(
        "unit_forest_length",
        [](int n) { return to_fraction(unit_rate_length<Rational>(n)); }, py::arg("n"));

    m.def(
        "assignment_time",
        [](const BipartiteRateGraph& g, int k, int threads) {
            return to_fraction(
                expected_time_to_k_assignment<Rational>(g, k, SumOptions{0, threads, nullptr}));
        },
        py::arg("graph"), py::arg("k"), py::arg("threads") = 1,
        "expected time until the first k-assignment appears");
    m.def(
        "assignment_length2",
        [](const BipartiteRateGraph& g) {
            return py::make_tuple(to_fraction(expected_min_2assignment_length_v1<Rational>(g)),
                                  to_fraction(expected_min_2assignment_length_v2<Rational>(g)));
        },
        py::arg("graph"),
        "expected minimal 2-assignment length, from both closed forms (they agree)");

    m.def(
        "shape_numerator",
        [](int m, int n, const std::vector<int>& lengths, int k) {
            return to_py_int(numerator_S(Shape(m, n, lengths), k));
        },
        py::arg("m"), py::arg("n"), py::arg("lengths"), py::arg("k"),
        "signed binomial product over the mid rectangles of a shape");
    m.def(
        "tabloid_count",
        [](int m, int n, int k) {
            long long count = 0;
            enumerate_tabloids(m, n, k, [&](const TabloidInstance&) { ++count; });
            return count;
        },
        py::arg("m"), py::arg("n"), py::arg("k"));

    m.def(
        "oracle_forest_time",
        [](const CompleteRateGraph& g, int k) { return to_fraction(lattice_dp_expected_time(g, k)); },
        py::arg("graph"), py::arg("k"));
    m.def(
        "oracle_forest_length",
        [](const CompleteRateGraph& g, int k) {
            return to_fraction(lattice_dp_expected_forest_length(g, k));
        },
        py::arg("graph"), py::arg("k"));
    m.def(
        "oracle_assignment_time",
        [](const BipartiteRateGraph& g, int k) {
            return to_fraction(lattice_dp_expected_time(g, k));
        },
        py::arg("graph"), py::arg("k"));

    m.def(
        "monte_carlo",
        [](const CompleteRateGraph& g, const std::string& statistic, int k, long long trials,
           std::uint64_t seed, int threads) {
            SimulationConfig config{statistic_from(statistic), k, trials, seed, threads};
            return simulation_dict(monte_carlo(g, config));
        },
        py::arg("graph"), py::arg("statistic"), py::arg("k"), py::arg("trials") = 100000,
        py::arg("seed") = 0, py::arg("threads") = 1);
    m.def(
        "monte_carlo",
        [](const BipartiteRateGraph& g, const std::string& statistic, int k, long long trials,
           std::uint64_t seed, int threads) {
            SimulationConfig config{statistic_from(statistic), k, trials, seed, threads};
            return simulation_dict(monte_carlo(g, config));
        },
        py::arg("graph"), py::arg("statistic"), py::arg("k"), py::arg("trials") = 100000,
        py::arg("seed") = 0, py::arg("threads") = 1);
}
