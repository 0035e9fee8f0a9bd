#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rategraph/rational.hpp"

namespace rategraph {

// Subset of a host graph's edge index space. Bit-per-edge with a fixed
// universe size, so equality is canonical by construction.
class EdgeSet {
public:
    explicit EdgeSet(int universe);

    static EdgeSet full(int universe);
    static EdgeSet of(int universe, const std::vector<int>& edges);

    int universe() const { return universe_; }
    int size() const;
    bool empty() const { return size() == 0; }
    bool is_full() const { return size() == universe_; }

    bool contains(int e) const;
    void insert(int e);
    void erase(int e);

    EdgeSet complement() const;
    bool is_subset_of(const EdgeSet& other) const;

    // Ascending edge indices.
    std::vector<int> elements() const;

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (int w = 0; w < static_cast<int>(words_.size()); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = __builtin_ctzll(bits);
                fn(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

private:
    void check_index(int e) const;

    int universe_;
    std::vector<std::uint64_t> words_;
};

// Rate labelling of K_n. Rates are stored once per unordered pair, in
// lexicographic (i, j) order with i < j, which is also the edge index order.
// Immutable after construction.
class CompleteRateGraph {
public:
    CompleteRateGraph(int n, std::vector<Rational> rates);

    static CompleteRateGraph unit(int n);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(rates_.size()); }

    int edge_index(int i, int j) const;
    std::pair<int, int> edge_endpoints(int e) const;

    const Rational& rate(int e) const { return rates_[e]; }
    const Rational& rate(int i, int j) const { return rates_[edge_index(i, j)]; }
    const std::vector<Rational>& rates() const { return rates_; }

    const Rational& total_rate() const { return total_; }

private:
    int n_;
    std::vector<Rational> rates_;
    Rational total_;
};

// Rate labelling of K_{m,n}; entries in row-major order.
class BipartiteRateGraph {
public:
    BipartiteRateGraph(int rows, int cols, std::vector<Rational> rates);

    static BipartiteRateGraph unit(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int edge_count() const { return rows_ * cols_; }

    int edge_index(int r, int c) const;
    std::pair<int, int> edge_endpoints(int e) const;

    const Rational& rate(int e) const { return rates_[e]; }
    const Rational& rate(int r, int c) const { return rates_[edge_index(r, c)]; }
    const std::vector<Rational>& rates() const { return rates_; }

    const Rational& total_rate() const { return total_; }

private:
    int rows_;
    int cols_;
    std::vector<Rational> rates_;
    Rational total_;
};

class UnionFind {
public:
    explicit UnionFind(int n);

    int find(int v);
    // True when the roots differed (i.e. the component count dropped).
    bool unite(int a, int b);
    int components() const { return components_; }

private:
    std::vector<int> parent_;
    int components_;
};

// Lexicographic index of the unordered pair (i, j) among the edges of K_n,
// and its inverse.
int complete_edge_index(int n, int i, int j);
std::pair<int, int> complete_edge_endpoints(int n, int e);

Rational rate_sum(const CompleteRateGraph& graph, const EdgeSet& edges);
Rational rate_sum(const BipartiteRateGraph& graph, const EdgeSet& edges);

// Number of connected components of (V_n, A); all n vertices retained.
int component_count(const CompleteRateGraph& graph, const EdgeSet& edges);

// Maximum matching size of the edge subset, by augmenting-path search.
int matching_size(const BipartiteRateGraph& graph, const EdgeSet& edges);
int matching_size(int rows, int cols, const EdgeSet& edges);

// True iff the per-row column supports form a chain under inclusion, i.e.
// some row/column permutation turns the set into a Young diagram. Requires a
// proper subset of the board (NotProperSubset otherwise).
bool is_tabloidal(int rows, int cols, const EdgeSet& edges);
bool is_tabloidal(const BipartiteRateGraph& graph, const EdgeSet& edges);

}  // namespace rategraph
