#pragma once

#include <functional>
#include <vector>

#include "rategraph/combinatorics.hpp"
#include "rategraph/graph.hpp"

namespace rategraph {

// Shared knobs for the enumeration-backed sums. cap == 0 picks the module
// default. When threads > 1 the enumeration is split into fixed chunks that
// are summed independently; exact mode is order-independent anyway, and the
// chunk layout does not depend on the thread count, so float mode stays
// deterministic too.
struct SumOptions {
    int cap = 0;
    int threads = 1;
    long long* term_count = nullptr;
};

// A set partition of {0..n-1} into nonempty blocks, together with the edge
// set it induces (the union of the within-block complete graphs).
struct CliqueCover {
    std::vector<int> block_of;              // restricted-growth assignment
    std::vector<std::vector<int>> blocks;   // blocks in order of first vertex

    int block_count() const { return static_cast<int>(blocks.size()); }
    EdgeSet edge_set() const;
};

// Visits every set partition of {0..n-1} with exactly j blocks, once each,
// in restricted-growth order. Throws InstanceTooLarge past the cap.
void enumerate_clique_covers(int n, int j,
                             const std::function<void(const CliqueCover&)>& visit,
                             int cap = 0);

// Deterministic appearance times for every edge of K_n; strictly positive and
// pairwise distinct (ties are rejected: the min-based identity is only
// claimed for generic times).
class FixedTimeAssignment {
public:
    FixedTimeAssignment(int n, std::vector<Rational> times);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(times_.size()); }
    const Rational& time(int e) const { return times_[e]; }
    const std::vector<Rational>& times() const { return times_; }

private:
    int n_;
    std::vector<Rational> times_;
};

// Expected time at which the component count first reaches k, as a sum of
// tau(j, k) / [E_n - B] over clique covers B with j blocks. Zero when k == n.
// Throws UnreachableTarget when a term with nonzero coefficient has a zero
// remaining-rate denominator.
template <class S>
S expected_time_to_k_components(const CompleteRateGraph& graph, int k,
                                const SumOptions& options = {});

// Expected length of the minimal spanning k-forest: the same sum with
// lambda(j, k) coefficients. Equals the tail sum of the expected times over
// r = k..n.
template <class S>
S expected_min_forest_length(const CompleteRateGraph& graph, int k,
                             const SumOptions& options = {});

// Unit-rate specializations (k = 1): sums over integer partitions of n with
// at least two parts. Much cheaper than the clique-cover path.
template <class S>
S unit_rate_time(int n, const SumOptions& options = {});

template <class S>
S unit_rate_length(int n, const SumOptions& options = {});

// Derandomized evaluation: each reciprocal rate is replaced by the minimum
// appearance time outside the cover. Equals the realized stopping time of
// the fixed-time process for any distinct times.
Rational derandomized_time(const FixedTimeAssignment& times, int k,
                           const SumOptions& options = {});

}  // namespace rategraph
