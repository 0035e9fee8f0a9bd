#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rategraph/forest.hpp"
#include "rategraph/graph.hpp"

namespace rategraph {

// A Young diagram inside an m x n box: weakly decreasing row lengths, with
// the sentinel row_length(0) = n. Proper: not the full board.
class Shape {
public:
    Shape(int rows, int cols, std::vector<int> lengths);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int cells() const;
    bool empty() const { return cells() == 0; }

    // 1-based row index; row 0 is the sentinel of length cols().
    int row_length(int row) const;
    const std::vector<int>& lengths() const { return lengths_; }

    friend bool operator==(const Shape&, const Shape&) = default;

private:
    int rows_;
    int cols_;
    std::vector<int> lengths_;
};

// The empty rectangle hanging off one inner corner, with the piece of the
// k-diagonal it owns.
struct MidRectangle {
    int rows;  // m_i
    int cols;  // n_i
    int diag;  // k_i = k - r - c for the owning corner (r, c)
};

// Addable-cell corners {(r, len(r+1)) : len(r) > len(r+1), 0 <= r <= m-1}.
// The empty shape has exactly one, (0, 0).
std::vector<std::pair<int, int>> inner_corners(const Shape& shape);

std::vector<MidRectangle> mid_rectangles(const Shape& shape, int k);

// Signed binomial product over the mid rectangles:
//   (-1)^(I+1) * prod C(m_i - 1, k_i - 1) C(n_i - 1, k_i - 1)
// with I = number of inner corners. Zero as soon as some rectangle's local
// diagonal leaves it (k_i < 1 or k_i > min(m_i, n_i)), via the out-of-range
// binomial convention. The empty shape is covered by the same formula (I = 1,
// one full-board rectangle).
BigInt numerator_S(const Shape& shape, int k);

// Row lengths of a tabloidal edge set, sorted into a Shape.
Shape shape_of(int rows, int cols, const EdgeSet& edges);

// A concrete edge set whose row supports form a chain, with its shape and
// (nonzero) numerator.
struct TabloidInstance {
    EdgeSet edges;
    Shape shape;
    BigInt numerator;
};

// Yields every proper subset with chain row supports and nonzero numerator,
// exactly once: shapes, then row assignments (multiset permutations), then
// nested column supports. Throws InstanceTooLarge past the cap.
void enumerate_tabloids(int rows, int cols, int k,
                        const std::function<void(const TabloidInstance&)>& visit,
                        int cap = 0);

// Expected time at which the first k-assignment appears:
//   sum over tabloid instances of S / [E_{m,n} - B].
template <class S>
S expected_time_to_k_assignment(const BipartiteRateGraph& graph, int k,
                                const SumOptions& options = {});

// Expected length of the minimal 2-assignment, via the two published closed
// forms. They are equal; the tests check it rather than assume it.
//
// v1 = E(T(1)) + E(T(2))
//      + sum_{i,j} a_ij [row_i - e_ij][col_j - e_ij]
//                  / ([E][E - e_ij][E - row_i][E - col_j])
template <class S>
S expected_min_2assignment_length_v1(const BipartiteRateGraph& graph,
                                     const SumOptions& options = {});

// v2 = 2/[E] + sum_{i,j} [e_ij][E - e_ij] / ([E][E - row_i][E - col_j])
template <class S>
S expected_min_2assignment_length_v2(const BipartiteRateGraph& graph,
                                     const SumOptions& options = {});

// Fixed-time analogue of the k-assignment expectation: S-weighted minima of
// the appearance times outside each tabloid. times are row-major, distinct,
// positive.
Rational derandomized_assignment_time(int rows, int cols,
                                      const std::vector<Rational>& times, int k,
                                      const SumOptions& options = {});

}  // namespace rategraph
