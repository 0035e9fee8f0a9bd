#include <doctest.h>

#include "rategraph/errors.hpp"
#include "rategraph/graph.hpp"

using namespace rategraph;

TEST_CASE("edge index round trip") {
    for (int n = 1; n <= 7; ++n) {
        const auto graph = CompleteRateGraph::unit(n);
        int e = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j, ++e) {
                CHECK(graph.edge_index(i, j) == e);
                CHECK(graph.edge_endpoints(e) == std::pair<int, int>{i, j});
            }
        }
    }
    const BipartiteRateGraph board = BipartiteRateGraph::unit(2, 3);
    CHECK(board.edge_index(1, 2) == 5);
    CHECK(board.edge_endpoints(4) == std::pair<int, int>{1, 1});
}

TEST_CASE("graph construction validation") {
    CHECK_THROWS_AS(CompleteRateGraph(0, {}), ValidationError);
    CHECK_THROWS_AS(CompleteRateGraph(3, {Rational(1)}), ValidationError);
    CHECK_THROWS_AS(CompleteRateGraph(2, {Rational(-1)}), ValidationError);
    CHECK_THROWS_AS(BipartiteRateGraph(0, 2, {}), ValidationError);
    // zero rates are a legitimate model
    CHECK_NOTHROW(CompleteRateGraph(2, {Rational(0)}));
}

TEST_CASE("rate sums") {
    const auto k3 = CompleteRateGraph::unit(3);
    CHECK(rate_sum(k3, EdgeSet::full(3)) == 3);
    CHECK(rate_sum(k3, EdgeSet(3)) == 0);

    const CompleteRateGraph weighted(3, {Rational(1), Rational(2), Rational(3)});
    EdgeSet pair(3);
    pair.insert(weighted.edge_index(0, 2));
    pair.insert(weighted.edge_index(1, 2));
    CHECK(rate_sum(weighted, pair) == 5);
    CHECK(weighted.total_rate() == 6);
}

TEST_CASE("component counts") {
    const auto k3 = CompleteRateGraph::unit(3);
    EdgeSet one(3);
    one.insert(k3.edge_index(0, 1));
    CHECK(component_count(k3, one) == 2);
    CHECK(component_count(k3, EdgeSet(3)) == 3);
    CHECK(component_count(k3, EdgeSet::full(3)) == 1);

    const auto k4 = CompleteRateGraph::unit(4);
    EdgeSet two(6);
    two.insert(k4.edge_index(0, 1));
    two.insert(k4.edge_index(2, 3));
    CHECK(component_count(k4, two) == 2);
}

TEST_CASE("matching sizes") {
    const auto b22 = BipartiteRateGraph::unit(2, 2);
    EdgeSet same_row(4);
    same_row.insert(b22.edge_index(0, 0));
    same_row.insert(b22.edge_index(0, 1));
    CHECK(matching_size(b22, same_row) == 1);

    EdgeSet diagonal(4);
    diagonal.insert(b22.edge_index(0, 0));
    diagonal.insert(b22.edge_index(1, 1));
    CHECK(matching_size(b22, diagonal) == 2);

    const auto b23 = BipartiteRateGraph::unit(2, 3);
    EdgeSet three(6);
    three.insert(b23.edge_index(0, 0));
    three.insert(b23.edge_index(0, 1));
    three.insert(b23.edge_index(1, 0));
    CHECK(matching_size(b23, three) == 2);
    CHECK(matching_size(b23, EdgeSet(6)) == 0);
}

TEST_CASE("tabloidal sets") {
    CHECK(is_tabloidal(2, 2, EdgeSet::of(4, {0, 3})) == false);
    CHECK(is_tabloidal(2, 2, EdgeSet::of(4, {0, 1, 2})) == true);
    CHECK(is_tabloidal(2, 2, EdgeSet(4)) == true);
    CHECK(is_tabloidal(3, 3, EdgeSet::of(9, {0, 3})) == true);  // two cells in one column
    CHECK(is_tabloidal(3, 3, EdgeSet::of(9, {2, 3})) == false);  // incomparable row supports
    CHECK_THROWS_AS(is_tabloidal(2, 2, EdgeSet::full(4)), NotProperSubset);
}

TEST_CASE("edge set basics") {
    EdgeSet edges(70);  // forces the two-word representation
    edges.insert(0);
    edges.insert(69);
    CHECK(edges.size() == 2);
    CHECK(edges.contains(69));
    CHECK_FALSE(edges.contains(1));
    CHECK(edges.complement().size() == 68);
    CHECK(edges.is_subset_of(EdgeSet::full(70)));
    CHECK_FALSE(EdgeSet::full(70).is_subset_of(edges));
    CHECK(edges.elements() == std::vector<int>{0, 69});
    CHECK_THROWS_AS(edges.insert(70), ValidationError);
    CHECK_THROWS_AS(rate_sum(CompleteRateGraph::unit(3), EdgeSet(4)), ValidationError);
}
