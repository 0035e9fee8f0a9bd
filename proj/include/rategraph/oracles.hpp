#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rategraph/graph.hpp"

namespace rategraph {

// Exact expectations by dynamic programming over the Boolean lattice of edge
// subsets: visit probabilities P(A) from the arrival chain, holding times as
// remaining-rate reciprocals. Independent of the closed-form paths; used to
// check them. State space is 2^|E|, capped at |E| <= 20.

// Stops when the component count has dropped to k.
Rational lattice_dp_expected_time(const CompleteRateGraph& graph, int k);

// Stops when a k-assignment has appeared.
Rational lattice_dp_expected_time(const BipartiteRateGraph& graph, int k);

// Expected minimal spanning k-forest length: each visited state contributes
// its holding time once per pending merge, i.e. weight max(kappa(A) - k, 0).
Rational lattice_dp_expected_forest_length(const CompleteRateGraph& graph, int k);

// Visit probabilities of the unstopped arrival chain, indexed by edge mask.
// Test hook: with all-positive rates the probabilities on each popcount level
// sum to one.
std::vector<Rational> lattice_visit_probabilities(int edge_count,
                                                  const std::vector<Rational>& rates);

// Exhaustive signed count of supersets of B without a k-assignment:
//   sum_{A >= B, mu(A) < k} (-1)^{|A - B|}
// Requires rows*cols <= 16 and B proper.
BigInt brute_force_S(int rows, int cols, int k, const EdgeSet& base);

template <class T>
struct SweepResult {
    bool reached = false;
    T time{};  // meaningful only when reached
};

// Inserts edges in increasing time order and reports the first time the
// condition holds. Edges with non-finite times never appear.
template <class T>
SweepResult<T> fixed_time_sweep_components(int n, const std::vector<T>& times, int k);

template <class T>
SweepResult<T> fixed_time_sweep_matching(int rows, int cols,
                                         const std::vector<T>& times, int k);

enum class Statistic {
    forest_time,
    forest_length,
    assignment_time,
    assignment_length,
};

struct SimulationConfig {
    Statistic statistic = Statistic::forest_time;
    int k = 1;
    long long trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct SimulationResult {
    double mean = 0.0;
    double std_error = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
};

// Seeded Monte Carlo with exponential edge times; bitwise reproducible for a
// given (seed, trials), independent of the thread count.
SimulationResult monte_carlo(const CompleteRateGraph& graph, const SimulationConfig& config);
SimulationResult monte_carlo(const BipartiteRateGraph& graph, const SimulationConfig& config);

}  // namespace rategraph
