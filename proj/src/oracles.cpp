#include "rategraph/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "rategraph/errors.hpp"
#include "rategraph/rng.hpp"

namespace rategraph {

namespace {

constexpr int kMaxLatticeEdges = 20;
constexpr int kMaxBruteForceCells = 16;

void check_lattice_cap(int edge_count) {
    if (edge_count > kMaxLatticeEdges) {
        throw StateSpaceTooLarge("lattice oracle: " + std::to_string(edge_count) +
                                 " edges means 2^" + std::to_string(edge_count) +
                                 " states; capped at 2^" + std::to_string(kMaxLatticeEdges));
    }
}

// Maximum matching of the cells set in `mask` on a rows x cols board.
int matching_of_mask(int rows, int cols, std::uint32_t mask) {
    std::vector<int> match_col(cols, -1);
    std::vector<char> seen(cols);
    auto augment = [&](auto&& self, int row) -> bool {
        for (int c = 0; c < cols; ++c) {
            if (!((mask >> (row * cols + c)) & 1) || seen[c]) {
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

// Visit probabilities restricted to the down-set where `continuing` holds,
// plus remaining rates; expectation = sum of P * weight / remaining over the
// continuing states. The continuing region being a down-set makes the pull
// recursion over continuing predecessors exact.
template <class ContinuingFn, class WeightFn>
Rational lattice_expectation(const std::vector<Rational>& rates, ContinuingFn continuing,
                             WeightFn weight) {
    const int edge_count = static_cast<int>(rates.size());
    check_lattice_cap(edge_count);
    const std::uint32_t states = std::uint32_t{1} << edge_count;

    std::vector<Rational> remaining(states);
    remaining[0] = std::accumulate(rates.begin(), rates.end(), Rational(0));
    for (std::uint32_t mask = 1; mask < states; ++mask) {
        const std::uint32_t low = mask & (~mask + 1);
        remaining[mask] = remaining[mask ^ low] - rates[std::countr_zero(low)];
    }

    std::vector<Rational> visit(states);
    visit[0] = 1;
    Rational expectation = 0;

    for (std::uint32_t mask = 0; mask < states; ++mask) {
        if (mask != 0) {
            Rational p = 0;
            for (std::uint32_t bits = mask; bits;) {
                const std::uint32_t low = bits & (~bits + 1);
                bits ^= low;
                const int e = std::countr_zero(low);
                if (rates[e] == 0) {
                    continue;
                }
                const std::uint32_t pred = mask ^ low;
                if (!continuing(pred)) {
                    continue;
                }
                // remaining[pred] >= rates[e] > 0 here
                p += visit[pred] * rates[e] / remaining[pred];
            }
            visit[mask] = p;
        }
        if (continuing(mask)) {
            const long long w = weight(mask);
            if (w != 0 && visit[mask] != 0) {
                if (remaining[mask] == 0) {
                    throw UnreachableTarget(
                        "lattice oracle: reachable state with zero remaining rate; the stop "
                        "condition has infinite expected hitting time");
                }
                expectation += visit[mask] * w / remaining[mask];
            }
        }
    }
    return expectation;
}

std::vector<int> component_table(const CompleteRateGraph& graph) {
    const int n = graph.vertex_count();
    const int edge_count = graph.edge_count();
    const std::uint32_t states = std::uint32_t{1} << edge_count;
    std::vector<int> kappa(states);
    for (std::uint32_t mask = 0; mask < states; ++mask) {
        UnionFind uf(n);
        for (std::uint32_t bits = mask; bits;) {
            const std::uint32_t low = bits & (~bits + 1);
            bits ^= low;
            const auto [i, j] = complete_edge_endpoints(n, std::countr_zero(low));
            uf.unite(i, j);
        }
        kappa[mask] = uf.components();
    }
    return kappa;
}

std::vector<int> matching_table(int rows, int cols) {
    const int edge_count = rows * cols;
    const std::uint32_t states = std::uint32_t{1} << edge_count;
    std::vector<int> mu(states);
    for (std::uint32_t mask = 0; mask < states; ++mask) {
        mu[mask] = matching_of_mask(rows, cols, mask);
    }
    return mu;
}

}  // namespace

Rational lattice_dp_expected_time(const CompleteRateGraph& graph, int k) {
    if (k < 0) {
        throw ValidationError("lattice oracle: k must be nonnegative");
    }
    check_lattice_cap(graph.edge_count());
    const auto kappa = component_table(graph);
    return lattice_expectation(
        graph.rates(), [&](std::uint32_t mask) { return kappa[mask] > k; },
        [](std::uint32_t) { return 1; });
}

Rational lattice_dp_expected_forest_length(const CompleteRateGraph& graph, int k) {
    if (k < 0) {
        throw ValidationError("lattice oracle: k must be nonnegative");
    }
    check_lattice_cap(graph.edge_count());
    const auto kappa = component_table(graph);
    // Each state still holding r > k components contributes its holding time
    // to the r, r-1, ..., k+1 merge waits, i.e. with weight kappa - k.
    return lattice_expectation(
        graph.rates(), [&](std::uint32_t mask) { return kappa[mask] > k; },
        [&](std::uint32_t mask) { return static_cast<long long>(kappa[mask] - k); });
}

Rational lattice_dp_expected_time(const BipartiteRateGraph& graph, int k) {
    if (k < 0) {
        throw ValidationError("lattice oracle: k must be nonnegative");
    }
    check_lattice_cap(graph.edge_count());
    const auto mu = matching_table(graph.rows(), graph.cols());
    return lattice_expectation(
        graph.rates(), [&](std::uint32_t mask) { return mu[mask] < k; },
        [](std::uint32_t) { return 1; });
}

std::vector<Rational> lattice_visit_probabilities(int edge_count,
                                                  const std::vector<Rational>& rates) {
    if (static_cast<int>(rates.size()) != edge_count) {
        throw ValidationError("lattice_visit_probabilities: rate count mismatch");
    }
    check_lattice_cap(edge_count);
    const std::uint32_t states = std::uint32_t{1} << edge_count;

    std::vector<Rational> remaining(states);
    remaining[0] = std::accumulate(rates.begin(), rates.end(), Rational(0));
    for (std::uint32_t mask = 1; mask < states; ++mask) {
        const std::uint32_t low = mask & (~mask + 1);
        remaining[mask] = remaining[mask ^ low] - rates[std::countr_zero(low)];
    }

    std::vector<Rational> visit(states);
    visit[0] = 1;
    for (std::uint32_t mask = 1; mask < states; ++mask) {
        Rational p = 0;
        for (std::uint32_t bits = mask; bits;) {
            const std::uint32_t low = bits & (~bits + 1);
            bits ^= low;
            const int e = std::countr_zero(low);
            if (rates[e] == 0) {
                continue;
            }
            p += visit[mask ^ low] * rates[e] / remaining[mask ^ low];
        }
        visit[mask] = p;
    }
    return visit;
}

BigInt brute_force_S(int rows, int cols, int k, const EdgeSet& base) {
    const int cells = rows * cols;
    if (cells > kMaxBruteForceCells) {
        throw StateSpaceTooLarge("brute_force_S: board larger than " +
                                 std::to_string(kMaxBruteForceCells) + " cells");
    }
    if (base.universe() != cells) {
        throw ValidationError("brute_force_S: edge set universe mismatch");
    }
    if (base.is_full()) {
        throw NotProperSubset("brute_force_S: the full board is not a proper subset");
    }

    std::uint32_t base_mask = 0;
    base.for_each([&](int e) { base_mask |= std::uint32_t{1} << e; });
    const std::uint32_t free_mask = ~base_mask & ((std::uint32_t{1} << cells) - 1);

    BigInt total = 0;
    std::uint32_t extra = free_mask;
    for (;;) {
        if (matching_of_mask(rows, cols, base_mask | extra) < k) {
            if (std::popcount(extra) % 2 == 0) {
                ++total;
            } else {
                --total;
            }
        }
        if (extra == 0) {
            break;
        }
        extra = (extra - 1) & free_mask;
    }
    return total;
}

namespace {

template <class T>
bool never_appears(const T&) {
    return false;
}

template <>
bool never_appears<double>(const double& t) {
    return !std::isfinite(t);
}

template <class T>
std::vector<int> time_order(const std::vector<T>& times) {
    std::vector<int> order(times.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return times[a] < times[b]; });
    return order;
}

}  // namespace

template <class T>
SweepResult<T> fixed_time_sweep_components(int n, const std::vector<T>& times, int k) {
    if (static_cast<int>(times.size()) != n * (n - 1) / 2) {
        throw ValidationError("fixed_time_sweep_components: expected one time per edge");
    }
    if (k >= n) {
        return {true, T{}};
    }
    UnionFind uf(n);
    for (int e : time_order(times)) {
        if (never_appears(times[e])) {
            break;  // sorted order: everything later never appears either
        }
        const auto [i, j] = complete_edge_endpoints(n, e);
        if (uf.unite(i, j) && uf.components() <= k) {
            return {true, times[e]};
        }
    }
    return {false, T{}};
}

template <class T>
SweepResult<T> fixed_time_sweep_matching(int rows, int cols, const std::vector<T>& times, int k) {
    if (static_cast<int>(times.size()) != rows * cols) {
        throw ValidationError("fixed_time_sweep_matching: expected one time per cell");
    }
    if (k <= 0) {
        return {true, T{}};
    }

    std::vector<std::vector<int>> adjacent(rows);
    std::vector<int> match_col(cols, -1);
    std::vector<int> match_row(rows, -1);
    std::vector<char> seen(cols);
    auto augment = [&](auto&& self, int row) -> bool {
        for (int c : adjacent[row]) {
            if (seen[c]) {
                continue;
            }
            seen[c] = 1;
            if (match_col[c] < 0 || self(self, match_col[c])) {
                match_col[c] = row;
                match_row[row] = c;
                return true;
            }
        }
        return false;
    };

    int matched = 0;
    for (int e : time_order(times)) {
        if (never_appears(times[e])) {
            break;
        }
        adjacent[e / cols].push_back(e % cols);
        // The matching was maximum before this edge arrived, so at most one
        // augmentation can succeed, and any augmenting path starts at some
        // unmatched row.
        for (int r = 0; r < rows && matched < k; ++r) {
            if (match_row[r] >= 0) {
                continue;
            }
            std::fill(seen.begin(), seen.end(), 0);
            if (augment(augment, r)) {
                ++matched;
                break;
            }
        }
        if (matched >= k) {
            return {true, times[e]};
        }
    }
    return {false, T{}};
}

template SweepResult<Rational> fixed_time_sweep_components<Rational>(int,
                                                                     const std::vector<Rational>&,
                                                                     int);
template SweepResult<double> fixed_time_sweep_components<double>(int, const std::vector<double>&,
                                                                 int);
template SweepResult<Rational> fixed_time_sweep_matching<Rational>(int, int,
                                                                   const std::vector<Rational>&,
                                                                   int);
template SweepResult<double> fixed_time_sweep_matching<double>(int, int,
                                                               const std::vector<double>&, int);

namespace {

// Minimal spanning k-forest length for fixed times: total time of the merges
// performed until k components remain.
double kruskal_forest_length(int n, const std::vector<double>& times, int k) {
    UnionFind uf(n);
    double length = 0.0;
    for (int e : time_order(times)) {
        if (uf.components() <= k) {
            break;
        }
        if (never_appears(times[e])) {
            break;
        }
        const auto [i, j] = complete_edge_endpoints(n, e);
        if (uf.unite(i, j)) {
            length += times[e];
        }
    }
    return uf.components() <= k ? length : std::numeric_limits<double>::infinity();
}

double min_assignment_length(int rows, int cols, const std::vector<double>& times, int k) {
    double best = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, int row_from, int chosen, std::uint64_t used_cols,
                   double partial) -> void {
        if (chosen == k) {
            best = partial;
            return;
        }
        for (int r = row_from; r + (k - chosen) <= rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                if ((used_cols >> c) & 1) {
                    continue;
                }
                const double t = times[r * cols + c];
                if (!std::isfinite(t) || partial + t >= best) {
                    continue;
                }
                self(self, r + 1, chosen + 1, used_cols | (std::uint64_t{1} << c), partial + t);
            }
        }
    };
    rec(rec, 0, 0, 0, 0.0);
    return best;
}

long long count_k_assignments(int rows, int cols, int k) {
    // C(rows, k) * C(cols, k) * k!, saturating well past the practical cap.
    long long count = 1;
    for (int i = 0; i < k; ++i) {
        count *= (rows - i);
        count *= (cols - i);
        count /= (i + 1);
        if (count > 100'000'000) {
            return count;
        }
    }
    return count;
}

struct TrialStats {
    double sum = 0.0;
    double sum_squares = 0.0;
};

template <class TrialFn>
SimulationResult run_trials(const SimulationConfig& config, TrialFn trial_value) {
    if (config.trials < 1) {
        throw ValidationError("monte_carlo: need at least one trial");
    }
    constexpr long long kBlock = 65536;
    const long long blocks = (config.trials + kBlock - 1) / kBlock;

    std::vector<TrialStats> partials(blocks);
    std::atomic<long long> next{0};

    auto worker = [&] {
        for (;;) {
            const long long b = next.fetch_add(1);
            if (b >= blocks) {
                return;
            }
            TrialStats stats;
            const long long hi = std::min(config.trials, (b + 1) * kBlock);
            for (long long t = b * kBlock; t < hi; ++t) {
                const double v = trial_value(static_cast<std::uint64_t>(t));
                stats.sum += v;
                stats.sum_squares += v * v;
            }
            partials[b] = stats;
        }
    };

    const int workers = std::max(1, static_cast<int>(std::min<long long>(config.threads, blocks)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    TrialStats total;
    for (const TrialStats& p : partials) {
        total.sum += p.sum;
        total.sum_squares += p.sum_squares;
    }
    const double n = static_cast<double>(config.trials);
    SimulationResult result;
    result.trials = config.trials;
    result.seed = config.seed;
    result.mean = total.sum / n;
    if (config.trials > 1) {
        const double variance =
            std::max(0.0, (total.sum_squares - n * result.mean * result.mean) / (n - 1.0));
        result.std_error = std::sqrt(variance / n);
    }
    return result;
}

std::vector<double> double_rates(const std::vector<Rational>& rates) {
    std::vector<double> out(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) {
        out[i] = to_double(rates[i]);
    }
    return out;
}

void check_positive_total(const Rational& total) {
    if (total <= 0) {
        throw ValidationError("monte_carlo: total rate must be positive");
    }
}

std::vector<double> sample_times(SplitMix64& rng, const std::vector<double>& rates) {
    std::vector<double> times(rates.size());
    for (std::size_t e = 0; e < rates.size(); ++e) {
        times[e] = rng.next_exponential(rates[e]);
    }
    return times;
}

}  // namespace

SimulationResult monte_carlo(const CompleteRateGraph& graph, const SimulationConfig& config) {
    if (config.statistic != Statistic::forest_time &&
        config.statistic != Statistic::forest_length) {
        throw InvalidStatistic("monte_carlo: complete graphs support forest statistics only");
    }
    if (config.k < 1 || config.k > graph.vertex_count()) {
        throw InvalidStatistic("monte_carlo: k out of range for the forest statistics");
    }
    check_positive_total(graph.total_rate());

    const auto rates = double_rates(graph.rates());
    const int n = graph.vertex_count();
    const int k = config.k;
    const bool length = config.statistic == Statistic::forest_length;

    return run_trials(config, [&, n, k, length](std::uint64_t trial) {
        SplitMix64 rng = SplitMix64::trial_stream(config.seed, trial);
        const auto times = sample_times(rng, rates);
        if (length) {
            return kruskal_forest_length(n, times, k);
        }
        const auto sweep = fixed_time_sweep_components(n, times, k);
        return sweep.reached ? sweep.time : std::numeric_limits<double>::infinity();
    });
}

SimulationResult monte_carlo(const BipartiteRateGraph& graph, const SimulationConfig& config) {
    if (config.statistic != Statistic::assignment_time &&
        config.statistic != Statistic::assignment_length) {
        throw InvalidStatistic("monte_carlo: bipartite graphs support assignment statistics only");
    }
    const int rows = graph.rows();
    const int cols = graph.cols();
    if (config.k < 1 || config.k > std::min(rows, cols)) {
        throw InvalidStatistic("monte_carlo: k out of range for the assignment statistics");
    }
    if (config.statistic == Statistic::assignment_length &&
        count_k_assignments(rows, cols, config.k) > 1'000'000) {
        throw InvalidStatistic(
            "monte_carlo: per-trial exact minimization over k-assignments is too large");
    }
    check_positive_total(graph.total_rate());

    const auto rates = double_rates(graph.rates());
    const int k = config.k;
    const bool length = config.statistic == Statistic::assignment_length;

    return run_trials(config, [&, rows, cols, k, length](std::uint64_t trial) {
        SplitMix64 rng = SplitMix64::trial_stream(config.seed, trial);
        const auto times = sample_times(rng, rates);
        if (length) {
            return min_assignment_length(rows, cols, times, k);
        }
        const auto sweep = fixed_time_sweep_matching(rows, cols, times, k);
        return sweep.reached ? sweep.time : std::numeric_limits<double>::infinity();
    });
}

}  // namespace rategraph
