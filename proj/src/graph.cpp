#include "rategraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "rategraph/errors.hpp"

namespace rategraph {

EdgeSet::EdgeSet(int universe) : universe_(universe) {
    if (universe < 0) {
        throw ValidationError("EdgeSet: negative universe");
    }
    words_.assign((universe + 63) / 64, 0);
}

EdgeSet EdgeSet::full(int universe) {
    EdgeSet set(universe);
    for (int e = 0; e < universe; ++e) {
        set.insert(e);
    }
    return set;
}

EdgeSet EdgeSet::of(int universe, const std::vector<int>& edges) {
    EdgeSet set(universe);
    for (int e : edges) {
        set.insert(e);
    }
    return set;
}

int EdgeSet::size() const {
    int count = 0;
    for (std::uint64_t w : words_) {
        count += std::popcount(w);
    }
    return count;
}

void EdgeSet::check_index(int e) const {
    if (e < 0 || e >= universe_) {
        throw ValidationError("EdgeSet: edge index " + std::to_string(e) +
                              " outside universe of size " + std::to_string(universe_));
    }
}

bool EdgeSet::contains(int e) const {
    check_index(e);
    return (words_[e / 64] >> (e % 64)) & 1;
}

void EdgeSet::insert(int e) {
    check_index(e);
    words_[e / 64] |= std::uint64_t{1} << (e % 64);
}

void EdgeSet::erase(int e) {
    check_index(e);
    words_[e / 64] &= ~(std::uint64_t{1} << (e % 64));
}

EdgeSet EdgeSet::complement() const {
    EdgeSet result(universe_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        result.words_[w] = ~words_[w];
    }
    // Clear bits past the universe.
    const int spare = static_cast<int>(words_.size()) * 64 - universe_;
    if (spare > 0 && !words_.empty()) {
        result.words_.back() &= ~std::uint64_t{0} >> spare;
    }
    return result;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
    if (universe_ != other.universe_) {
        throw ValidationError("EdgeSet: universe mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] & ~other.words_[w]) {
            return false;
        }
    }
    return true;
}

std::vector<int> EdgeSet::elements() const {
    std::vector<int> result;
    result.reserve(size());
    for_each([&](int e) { result.push_back(e); });
    return result;
}

namespace {

std::vector<Rational> checked_rates(std::vector<Rational> rates, std::size_t expected,
                                    const char* what) {
    if (rates.size() != expected) {
        throw ValidationError(std::string(what) + ": expected " + std::to_string(expected) +
                              " rates, got " + std::to_string(rates.size()));
    }
    for (const Rational& r : rates) {
        if (r < 0) {
            throw ValidationError(std::string(what) + ": negative rate");
        }
    }
    return rates;
}

Rational total_of(const std::vector<Rational>& rates) {
    Rational total = 0;
    for (const Rational& r : rates) {
        total += r;
    }
    return total;
}

}  // namespace

CompleteRateGraph::CompleteRateGraph(int n, std::vector<Rational> rates) : n_(n) {
    if (n < 1) {
        throw ValidationError("CompleteRateGraph: need at least one vertex");
    }
    rates_ = checked_rates(std::move(rates), static_cast<std::size_t>(n) * (n - 1) / 2,
                           "CompleteRateGraph");
    total_ = total_of(rates_);
}

CompleteRateGraph CompleteRateGraph::unit(int n) {
    if (n < 1) {
        throw ValidationError("CompleteRateGraph: need at least one vertex");
    }
    return CompleteRateGraph(n, std::vector<Rational>(static_cast<std::size_t>(n) * (n - 1) / 2,
                                                      Rational(1)));
}

int complete_edge_index(int n, int i, int j) {
    if (i > j) {
        std::swap(i, j);
    }
    if (i < 0 || j >= n || i == j) {
        throw ValidationError("complete_edge_index: bad vertex pair");
    }
    // Lexicographic over pairs (i, j), i < j.
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> complete_edge_endpoints(int n, int e) {
    if (e < 0 || e >= n * (n - 1) / 2) {
        throw ValidationError("complete_edge_endpoints: bad edge index");
    }
    int i = 0;
    int row = n - 1;
    while (e >= row) {
        e -= row;
        --row;
        ++i;
    }
    return {i, i + 1 + e};
}

int CompleteRateGraph::edge_index(int i, int j) const {
    return complete_edge_index(n_, i, j);
}

std::pair<int, int> CompleteRateGraph::edge_endpoints(int e) const {
    return complete_edge_endpoints(n_, e);
}

BipartiteRateGraph::BipartiteRateGraph(int rows, int cols, std::vector<Rational> rates)
    : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) {
        throw ValidationError("BipartiteRateGraph: dimensions must be at least 1");
    }
    rates_ = checked_rates(std::move(rates), static_cast<std::size_t>(rows) * cols,
                           "BipartiteRateGraph");
    total_ = total_of(rates_);
}

BipartiteRateGraph BipartiteRateGraph::unit(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw ValidationError("BipartiteRateGraph: dimensions must be at least 1");
    }
    return BipartiteRateGraph(rows, cols,
                              std::vector<Rational>(static_cast<std::size_t>(rows) * cols,
                                                    Rational(1)));
}

int BipartiteRateGraph::edge_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
        throw ValidationError("BipartiteRateGraph: bad entry");
    }
    return r * cols_ + c;
}

std::pair<int, int> BipartiteRateGraph::edge_endpoints(int e) const {
    if (e < 0 || e >= edge_count()) {
        throw ValidationError("BipartiteRateGraph: bad edge index");
    }
    return {e / cols_, e % cols_};
}

UnionFind::UnionFind(int n) : parent_(n), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

bool UnionFind::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
        return false;
    }
    parent_[a] = b;
    --components_;
    return true;
}

namespace {

void check_universe(int universe, const EdgeSet& edges, const char* what) {
    if (edges.universe() != universe) {
        throw ValidationError(std::string(what) + ": edge set universe " +
                              std::to_string(edges.universe()) + " does not match host (" +
                              std::to_string(universe) + ")");
    }
}

template <class Graph>
Rational rate_sum_impl(const Graph& graph, const EdgeSet& edges) {
    check_universe(graph.edge_count(), edges, "rate_sum");
    Rational sum = 0;
    edges.for_each([&](int e) { sum += graph.rate(e); });
    return sum;
}

}  // namespace

Rational rate_sum(const CompleteRateGraph& graph, const EdgeSet& edges) {
    return rate_sum_impl(graph, edges);
}

Rational rate_sum(const BipartiteRateGraph& graph, const EdgeSet& edges) {
    return rate_sum_impl(graph, edges);
}

int component_count(const CompleteRateGraph& graph, const EdgeSet& edges) {
    check_universe(graph.edge_count(), edges, "component_count");
    UnionFind uf(graph.vertex_count());
    edges.for_each([&](int e) {
        const auto [i, j] = graph.edge_endpoints(e);
        uf.unite(i, j);
    });
    return uf.components();
}

int matching_size(int rows, int cols, const EdgeSet& edges) {
    check_universe(rows * cols, edges, "matching_size");
    std::vector<std::vector<int>> adjacent(rows);
    edges.for_each([&](int e) { adjacent[e / cols].push_back(e % cols); });

    std::vector<int> match_col(cols, -1);
    std::vector<char> seen(cols, 0);
    auto augment = [&](auto&& self, int row) -> bool {
        for (int c : adjacent[row]) {
            if (seen[c]) {
                continue;
            }
            seen[c] = 1;
            if (match_col[c] < 0 || self(self, match_col[c])) {
                match_col[c] = row;
                return true;
            }
        }
        return false;
    };

    int size = 0;
    for (int r = 0; r < rows; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        if (augment(augment, r)) {
            ++size;
        }
    }
    return size;
}

int matching_size(const BipartiteRateGraph& graph, const EdgeSet& edges) {
    return matching_size(graph.rows(), graph.cols(), edges);
}

bool is_tabloidal(int rows, int cols, const EdgeSet& edges) {
    check_universe(rows * cols, edges, "is_tabloidal");
    if (cols > 64) {
        throw ValidationError("is_tabloidal: more than 64 columns unsupported");
    }
    if (edges.is_full()) {
        throw NotProperSubset("is_tabloidal: the full board is not a proper subset");
    }
    std::vector<std::uint64_t> support(rows, 0);
    edges.for_each([&](int e) { support[e / cols] |= std::uint64_t{1} << (e % cols); });
    std::sort(support.begin(), support.end(),
              [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) > std::popcount(b); });
    for (int r = 0; r + 1 < rows; ++r) {
        if ((support[r] & support[r + 1]) != support[r + 1]) {
            return false;
        }
    }
    return true;
}

bool is_tabloidal(const BipartiteRateGraph& graph, const EdgeSet& edges) {
    return is_tabloidal(graph.rows(), graph.cols(), edges);
}

}  // namespace rategraph
