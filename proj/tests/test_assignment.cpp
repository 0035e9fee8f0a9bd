#include <doctest.h>

#include <map>
#include <vector>

#include "rategraph/assignment.hpp"
#include "rategraph/errors.hpp"
#include "rategraph/oracles.hpp"

using namespace rategraph;

namespace {

std::vector<Rational> rationals(std::initializer_list<Rational> values) {
    return std::vector<Rational>(values);
}

}  // namespace

TEST_CASE("inner corners") {
    const Shape empty(3, 4, {0, 0, 0});
    CHECK(inner_corners(empty) == std::vector<std::pair<int, int>>{{0, 0}});

    const Shape cell(2, 2, {1, 0});
    CHECK(inner_corners(cell) == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});

    const Shape row(3, 4, {4, 0, 0});
    CHECK(inner_corners(row) == std::vector<std::pair<int, int>>{{1, 0}});

    const Shape column(3, 4, {1, 1, 1});
    CHECK(inner_corners(column) == std::vector<std::pair<int, int>>{{0, 1}});

    const Shape staircase(3, 4, {3, 2, 0});
    CHECK(inner_corners(staircase) ==
          std::vector<std::pair<int, int>>{{0, 3}, {1, 2}, {2, 0}});
}

TEST_CASE("mid rectangles") {
    const Shape empty(3, 4, {0, 0, 0});
    const auto whole = mid_rectangles(empty, 2);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].rows == 3);
    CHECK(whole[0].cols == 4);
    CHECK(whole[0].diag == 2);

    const Shape cell(3, 4, {1, 0, 0});
    const auto pair = mid_rectangles(cell, 2);
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].rows == 1);
    CHECK(pair[0].cols == 3);
    CHECK(pair[0].diag == 1);
    CHECK(pair[1].rows == 2);
    CHECK(pair[1].cols == 1);
    CHECK(pair[1].diag == 1);

    const Shape column(3, 4, {1, 1, 1});
    const auto one = mid_rectangles(column, 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0].rows == 3);
    CHECK(one[0].cols == 3);
    CHECK(one[0].diag == 1);
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(Shape(2, 2, {2, 2}), ValidationError);   // full board
    CHECK_THROWS_AS(Shape(2, 2, {1, 2}), ValidationError);   // not weakly decreasing
    CHECK_THROWS_AS(Shape(2, 2, {3, 0}), ValidationError);   // outside the box
    CHECK_THROWS_AS(Shape(2, 2, {1}), ValidationError);      // wrong length count
    CHECK_NOTHROW(Shape(2, 2, {2, 1}));
}

TEST_CASE("numerators from the mid-rectangle product") {
    CHECK(numerator_S(Shape(2, 2, {0, 0}), 2) == 1);
    CHECK(numerator_S(Shape(2, 2, {1, 0}), 2) == -1);
    CHECK(numerator_S(Shape(3, 3, {2, 1, 0}), 2) == 0);
    CHECK(numerator_S(Shape(4, 4, {2, 1, 0, 0}), 2) == 0);
    CHECK(numerator_S(Shape(4, 4, {0, 0, 0, 0}), 3) == 9);
    CHECK(numerator_S(Shape(2, 3, {0, 0}), 2) == 2);
    CHECK_THROWS_AS(numerator_S(Shape(2, 2, {1, 0}), 3), ValidationError);
}

TEST_CASE("shape of a tabloidal edge set") {
    const auto shape = shape_of(2, 2, EdgeSet::of(4, {0, 1, 2}));
    CHECK(shape.lengths() == std::vector<int>{2, 1});
    CHECK_THROWS_AS(shape_of(2, 2, EdgeSet::of(4, {0, 3})), ValidationError);
}

TEST_CASE("tabloid enumeration counts") {
    std::map<std::vector<int>, int> by_shape;
    int count = 0;
    enumerate_tabloids(2, 2, 2, [&](const TabloidInstance& instance) {
        ++count;
        ++by_shape[instance.shape.lengths()];
    });
    CHECK(count == 9);
    CHECK(by_shape[{0, 0}] == 1);
    CHECK(by_shape[{1, 0}] == 4);
    CHECK(by_shape[{2, 0}] == 2);
    CHECK(by_shape[{1, 1}] == 2);

    count = 0;
    enumerate_tabloids(3, 4, 1, [&](const TabloidInstance& instance) {
        ++count;
        CHECK(instance.edges.empty());
        CHECK(instance.numerator == 1);
    });
    CHECK(count == 1);

    count = 0;
    enumerate_tabloids(2, 3, 2, [&](const TabloidInstance&) { ++count; });
    CHECK(count == 12);  // 1 empty + 6 cells + 2 rows + 3 columns

    CHECK_THROWS_AS(enumerate_tabloids(9, 2, 1, [](const TabloidInstance&) {}),
                    InstanceTooLarge);
    CHECK_THROWS_AS(enumerate_tabloids(2, 2, 3, [](const TabloidInstance&) {}),
                    UnreachableTarget);
}

TEST_CASE("expected time to a k-assignment") {
    const auto b22 = BipartiteRateGraph::unit(2, 2);
    CHECK(expected_time_to_k_assignment<Rational>(b22, 2) == Rational(11, 12));
    CHECK(expected_time_to_k_assignment<Rational>(b22, 1) == Rational(1, 4));

    const auto b23 = BipartiteRateGraph::unit(2, 3);
    CHECK(expected_time_to_k_assignment<Rational>(b23, 2) == Rational(11, 20));

    const BipartiteRateGraph weighted(2, 2, rationals({1, 2, 3, 4}));
    CHECK(expected_time_to_k_assignment<Rational>(weighted, 1) ==
          Rational(1, 10));  // first arrival of any edge

    CHECK_THROWS_AS(expected_time_to_k_assignment<Rational>(b22, 3), UnreachableTarget);
    CHECK_THROWS_AS(expected_time_to_k_assignment<Rational>(b22, 0), ValidationError);
}

TEST_CASE("zero rates can make a k-assignment unreachable") {
    // all rate mass in one row: no 2-assignment ever appears
    const BipartiteRateGraph one_row(2, 2, rationals({1, 1, 0, 0}));
    CHECK_THROWS_AS(expected_time_to_k_assignment<Rational>(one_row, 2), UnreachableTarget);
    CHECK(expected_time_to_k_assignment<Rational>(one_row, 1) == Rational(1, 2));
    CHECK_THROWS_AS(expected_min_2assignment_length_v1<Rational>(one_row), UnreachableTarget);
    CHECK_THROWS_AS(expected_min_2assignment_length_v2<Rational>(one_row), UnreachableTarget);
}

TEST_CASE("minimal 2-assignment length closed forms") {
    const auto b22 = BipartiteRateGraph::unit(2, 2);
    CHECK(expected_min_2assignment_length_v1<Rational>(b22) == Rational(5, 4));
    CHECK(expected_min_2assignment_length_v2<Rational>(b22) == Rational(5, 4));

    // diagonal support only: both edges must appear, so the expected length
    // is two unit-exponential means
    const BipartiteRateGraph diagonal(2, 2, rationals({1, 0, 0, 1}));
    CHECK(expected_min_2assignment_length_v1<Rational>(diagonal) == 2);
    CHECK(expected_min_2assignment_length_v2<Rational>(diagonal) == 2);

    CHECK_THROWS_AS(expected_min_2assignment_length_v1<Rational>(BipartiteRateGraph::unit(1, 5)),
                    DimensionTooSmall);
}

TEST_CASE("derandomized assignment stopping times") {
    // 2x2 with ordered times: the first disjoint pair completes at t21
    const std::vector<Rational> times = rationals(
        {Rational(1, 10), Rational(2, 10), Rational(3, 10), Rational(4, 10)});
    CHECK(derandomized_assignment_time(2, 2, times, 2) == Rational(3, 10));
    CHECK(derandomized_assignment_time(2, 2, times, 1) == Rational(1, 10));

    const auto sweep = fixed_time_sweep_matching(2, 2, times, 2);
    CHECK(sweep.reached);
    CHECK(sweep.time == Rational(3, 10));

    CHECK_THROWS_AS(
        derandomized_assignment_time(2, 2, rationals({1, 1, 2, 3}), 1), ValidationError);
}

TEST_CASE("assignment float mode tracks exact mode") {
    const BipartiteRateGraph weighted(3, 3,
                                      rationals({1, 2, Rational(1, 3), 4, Rational(5, 2), 6,
                                                 Rational(7, 4), 8, 9}));
    for (int k = 1; k <= 3; ++k) {
        const double approx = expected_time_to_k_assignment<double>(weighted, k);
        const double exact = to_double(expected_time_to_k_assignment<Rational>(weighted, k));
        CHECK(std::abs(approx - exact) <= 1e-9 * std::abs(exact));
    }
    const double v1 = expected_min_2assignment_length_v1<double>(weighted);
    const double v2 = expected_min_2assignment_length_v2<double>(weighted);
    const double exact = to_double(expected_min_2assignment_length_v1<Rational>(weighted));
    CHECK(std::abs(v1 - exact) <= 1e-9 * exact);
    CHECK(std::abs(v2 - exact) <= 1e-9 * exact);
}

TEST_CASE("threaded tabloid sums match single-threaded sums") {
    const auto b55 = BipartiteRateGraph::unit(5, 5);
    SumOptions threaded;
    threaded.threads = 4;
    CHECK(expected_time_to_k_assignment<Rational>(b55, 3, threaded) ==
          expected_time_to_k_assignment<Rational>(b55, 3));
    CHECK(expected_time_to_k_assignment<double>(b55, 3, threaded) ==
          expected_time_to_k_assignment<double>(b55, 3));
}
