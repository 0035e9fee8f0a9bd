#include "rategraph/forest.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "rategraph/errors.hpp"

namespace rategraph {

namespace {

constexpr int kDefaultForestCap = 12;

int effective_cap(const SumOptions& options) {
    return options.cap > 0 ? options.cap : kDefaultForestCap;
}

// Recursive set-partition scan in restricted-growth order: vertex v joins the
// existing blocks in index order, then opens a new one. `within` carries the
// total rate inside blocks; `nz_within` counts the nonzero-rate edges inside
// blocks, so exhausted remainders are detected exactly in both scalar modes.
template <class S, class Leaf>
void scan_partitions(const std::vector<std::vector<S>>& mat,
                     const std::vector<std::vector<char>>& nz, int n, int v, int stop,
                     std::vector<int>& block_of, std::vector<std::vector<int>>& blocks,
                     const S& within, long long nz_within, Leaf&& leaf) {
    if (v == stop) {
        leaf(blocks, block_of, within, nz_within);
        return;
    }
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        S grown = within;
        long long nz_grown = nz_within;
        for (int u : blocks[b]) {
            grown += mat[u][v];
            nz_grown += nz[u][v];
        }
        blocks[b].push_back(v);
        block_of[v] = b;
        scan_partitions(mat, nz, n, v + 1, stop, block_of, blocks, grown, nz_grown, leaf);
        blocks[b].pop_back();
    }
    blocks.push_back({v});
    block_of[v] = static_cast<int>(blocks.size()) - 1;
    scan_partitions(mat, nz, n, v + 1, stop, block_of, blocks, within, nz_within, leaf);
    blocks.pop_back();
}

// Splits the partition space into chunks by the block assignment of a fixed
// vertex prefix (layout depends only on n, never on the thread count), sums
// each chunk independently, and folds the partials in chunk order.
//
// Term contract: term(blocks, block_of, within, nz_within, acc, count).
template <class S, class Term>
std::pair<S, long long> sum_over_partitions(const std::vector<std::vector<S>>& mat,
                                            const std::vector<std::vector<char>>& nz, int n,
                                            int threads, Term term) {
    const int depth = n >= 9 ? 6 : 0;

    std::vector<std::vector<int>> prefixes;
    {
        std::vector<int> block_of(n, 0);
        std::vector<std::vector<int>> blocks;
        scan_partitions<S>(mat, nz, n, 0, depth, block_of, blocks, S{}, 0,
                           [&](const auto&, const std::vector<int>& assignment, const S&,
                               long long) {
                               prefixes.emplace_back(assignment.begin(),
                                                     assignment.begin() + depth);
                           });
    }

    std::vector<std::pair<S, long long>> partials(prefixes.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= prefixes.size()) {
                return;
            }
            try {
                std::vector<int> block_of(n, 0);
                std::vector<std::vector<int>> blocks;
                S within{};
                long long nz_within = 0;
                for (int v = 0; v < depth; ++v) {
                    const int b = prefixes[c][v];
                    if (b == static_cast<int>(blocks.size())) {
                        blocks.emplace_back();
                    }
                    for (int u : blocks[b]) {
                        within += mat[u][v];
                        nz_within += nz[u][v];
                    }
                    blocks[b].push_back(v);
                    block_of[v] = b;
                }
                S acc{};
                long long count = 0;
                scan_partitions(mat, nz, n, depth, n, block_of, blocks, within, nz_within,
                                [&](const auto& bl, const std::vector<int>& assignment,
                                    const S& w, long long nzw) {
                                    term(bl, assignment, w, nzw, acc, count);
                                });
                partials[c] = {std::move(acc), count};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };

    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(prefixes.size())));
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
    if (failure) {
        std::rethrow_exception(failure);
    }

    S total{};
    long long count = 0;
    for (auto& [sum, c] : partials) {
        total += sum;
        count += c;
    }
    return {std::move(total), count};
}

template <class S>
std::vector<std::vector<S>> rate_matrix(const CompleteRateGraph& graph) {
    const int n = graph.vertex_count();
    std::vector<std::vector<S>> mat(n, std::vector<S>(n, S{}));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            mat[i][j] = mat[j][i] = ScalarOps<S>::from(graph.rate(i, j));
        }
    }
    return mat;
}

std::pair<std::vector<std::vector<char>>, long long> nonzero_matrix(
    const CompleteRateGraph& graph) {
    const int n = graph.vertex_count();
    std::vector<std::vector<char>> nz(n, std::vector<char>(n, 0));
    long long total = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const char bit = graph.rate(i, j) != 0 ? 1 : 0;
            nz[i][j] = nz[j][i] = bit;
            total += bit;
        }
    }
    return {std::move(nz), total};
}

// Shared core of the two expectation formulas; only the coefficient table
// differs (tau for times, lambda for lengths).
template <class S>
S clique_cover_expectation(const CompleteRateGraph& graph, int k, bool lengths,
                           const SumOptions& options) {
    const int n = graph.vertex_count();
    if (k < 1 || k > n) {
        throw ValidationError("expected k in [1, n], got " + std::to_string(k));
    }
    if (n > effective_cap(options)) {
        throw InstanceTooLarge("complete graph on " + std::to_string(n) +
                               " vertices exceeds the enumeration cap " +
                               std::to_string(effective_cap(options)));
    }
    if (options.term_count) {
        *options.term_count = 0;
    }
    if (k == n) {
        return S{};
    }

    const StirlingTables tables(n);
    std::vector<S> coeff(n + 1, S{});
    std::vector<char> coeff_nonzero(n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        const BigInt& c = lengths ? tables.lambda(j, k) : tables.tau(j, k);
        coeff[j] = ScalarOps<S>::from(c);
        coeff_nonzero[j] = c != 0 ? 1 : 0;
    }

    const auto mat = rate_matrix<S>(graph);
    const auto [nz, nz_total] = nonzero_matrix(graph);
    const S total = ScalarOps<S>::from(graph.total_rate());

    auto result = sum_over_partitions<S>(
        mat, nz, n, options.threads,
        [&](const auto& blocks, const std::vector<int>&, const S& within, long long nz_within,
            S& acc, long long& terms) {
            const int j = static_cast<int>(blocks.size());
            if (!coeff_nonzero[j]) {
                return;
            }
            if (nz_within == nz_total) {
                throw UnreachableTarget(
                    "zero remaining rate outside a clique cover with nonzero coefficient; "
                    "the target component count is not reachable in finite expected time");
            }
            acc += coeff[j] / (total - within);
            ++terms;
        });
    if (options.term_count) {
        *options.term_count = result.second;
    }
    return std::move(result.first);
}

// Multiplicity vectors (e_1, e_2, ...) with sum i*e_i = n, visited as
// (parts list, e = number of parts). Small: partition counts, not Bell.
template <class Fn>
void for_each_integer_partition(int n, Fn&& fn) {
    std::vector<int> multiplicity(n + 1, 0);
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            fn(multiplicity);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            ++multiplicity[part];
            self(self, remaining - part, part);
            --multiplicity[part];
        }
    };
    rec(rec, n, n);
}

template <class S>
S unit_rate_sum(int n, bool lengths, const SumOptions& options) {
    if (n < 2) {
        throw ValidationError("unit-rate formulas need n >= 2");
    }
    if (options.term_count) {
        *options.term_count = 0;
    }
    S acc{};
    for_each_integer_partition(n, [&](const std::vector<int>& multiplicity) {
        long long e = 0;
        long long square_sum = 0;
        for (int i = 1; i <= n; ++i) {
            e += multiplicity[i];
            square_sum += static_cast<long long>(i) * i * multiplicity[i];
        }
        if (e < 2) {
            return;
        }
        // n! / prod (i!)^{e_i}  *  e! / prod e_i!  *  (-1)^e
        BigInt numerator = factorial(n) * factorial(static_cast<int>(e));
        for (int i = 1; i <= n; ++i) {
            if (multiplicity[i] == 0) {
                continue;
            }
            BigInt part_factorial = factorial(i);
            for (int rep = 0; rep < multiplicity[i]; ++rep) {
                numerator /= part_factorial;
            }
            numerator /= factorial(multiplicity[i]);
        }
        if (e % 2 != 0) {
            numerator = -numerator;
        }
        const long long gap = static_cast<long long>(n) * n - square_sum;
        // Time divides by (e/2) * gap, length by C(e, 2) * gap. The former is
        // kept integral by scaling the numerator instead.
        BigInt denominator;
        if (lengths) {
            denominator = binomial(e, 2) * gap;
        } else {
            numerator *= 2;
            denominator = BigInt(e) * gap;
        }
        acc += ScalarOps<S>::from(numerator) / ScalarOps<S>::from(denominator);
        if (options.term_count) {
            ++*options.term_count;
        }
    });
    return acc;
}

}  // namespace

EdgeSet CliqueCover::edge_set() const {
    const int n = static_cast<int>(block_of.size());
    EdgeSet edges(n * (n - 1) / 2);
    for (const auto& block : blocks) {
        for (std::size_t a = 0; a < block.size(); ++a) {
            for (std::size_t b = a + 1; b < block.size(); ++b) {
                edges.insert(complete_edge_index(n, block[a], block[b]));
            }
        }
    }
    return edges;
}

void enumerate_clique_covers(int n, int j,
                             const std::function<void(const CliqueCover&)>& visit, int cap) {
    if (n < 1 || j < 1 || j > n) {
        throw ValidationError("enumerate_clique_covers: need 1 <= j <= n");
    }
    const int limit = cap > 0 ? cap : kDefaultForestCap;
    if (n > limit) {
        throw InstanceTooLarge("clique-cover enumeration capped at n = " + std::to_string(limit));
    }

    std::vector<int> block_of(n, 0);
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            if (static_cast<int>(blocks.size()) == j) {
                visit(CliqueCover{block_of, blocks});
            }
            return;
        }
        // Prune branches that cannot end with exactly j blocks.
        const int have = static_cast<int>(blocks.size());
        if (have > j || have + (n - v) < j) {
            return;
        }
        for (int b = 0; b < have; ++b) {
            blocks[b].push_back(v);
            block_of[v] = b;
            self(self, v + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({v});
        block_of[v] = have;
        self(self, v + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
}

FixedTimeAssignment::FixedTimeAssignment(int n, std::vector<Rational> times) : n_(n) {
    if (n < 1) {
        throw ValidationError("FixedTimeAssignment: need at least one vertex");
    }
    const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (times.size() != expected) {
        throw ValidationError("FixedTimeAssignment: expected " + std::to_string(expected) +
                              " times, got " + std::to_string(times.size()));
    }
    for (const Rational& t : times) {
        if (t <= 0) {
            throw ValidationError("FixedTimeAssignment: times must be positive");
        }
    }
    std::vector<Rational> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("FixedTimeAssignment: times must be pairwise distinct");
    }
    times_ = std::move(times);
}

template <class S>
S expected_time_to_k_components(const CompleteRateGraph& graph, int k,
                                const SumOptions& options) {
    return clique_cover_expectation<S>(graph, k, /*lengths=*/false, options);
}

template <class S>
S expected_min_forest_length(const CompleteRateGraph& graph, int k, const SumOptions& options) {
    return clique_cover_expectation<S>(graph, k, /*lengths=*/true, options);
}

template <class S>
S unit_rate_time(int n, const SumOptions& options) {
    return unit_rate_sum<S>(n, /*lengths=*/false, options);
}

template <class S>
S unit_rate_length(int n, const SumOptions& options) {
    return unit_rate_sum<S>(n, /*lengths=*/true, options);
}

Rational derandomized_time(const FixedTimeAssignment& times, int k, const SumOptions& options) {
    const int n = times.vertex_count();
    if (k < 1 || k >= n) {
        throw ValidationError("derandomized_time: need 1 <= k < n");
    }
    if (n > effective_cap(options)) {
        throw InstanceTooLarge("complete graph on " + std::to_string(n) +
                               " vertices exceeds the enumeration cap " +
                               std::to_string(effective_cap(options)));
    }
    if (options.term_count) {
        *options.term_count = 0;
    }

    const StirlingTables tables(n);
    std::vector<Rational> coeff(n + 1);
    std::vector<char> coeff_nonzero(n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        coeff[j] = Rational(tables.tau(j, k));
        coeff_nonzero[j] = tables.tau(j, k) != 0 ? 1 : 0;
    }

    // Rates are irrelevant here; reuse the scan with a zero matrix.
    std::vector<std::vector<Rational>> zero_mat(n, std::vector<Rational>(n, Rational(0)));
    std::vector<std::vector<char>> zero_nz(n, std::vector<char>(n, 0));

    auto result = sum_over_partitions<Rational>(
        zero_mat, zero_nz, n, options.threads,
        [&](const auto& blocks, const std::vector<int>& block_of, const Rational&, long long,
            Rational& acc, long long& terms) {
            const int j = static_cast<int>(blocks.size());
            if (!coeff_nonzero[j]) {
                return;
            }
            // min over edges joining different blocks
            const Rational* best = nullptr;
            for (int a = 0, e = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b, ++e) {
                    if (block_of[a] != block_of[b]) {
                        const Rational& t = times.time(e);
                        if (!best || t < *best) {
                            best = &t;
                        }
                    }
                }
            }
            acc += coeff[j] * *best;
            ++terms;
        });
    if (options.term_count) {
        *options.term_count = result.second;
    }
    return std::move(result.first);
}

template Rational expected_time_to_k_components<Rational>(const CompleteRateGraph&, int,
                                                          const SumOptions&);
template double expected_time_to_k_components<double>(const CompleteRateGraph&, int,
                                                      const SumOptions&);
template Rational expected_min_forest_length<Rational>(const CompleteRateGraph&, int,
                                                       const SumOptions&);
template double expected_min_forest_length<double>(const CompleteRateGraph&, int,
                                                   const SumOptions&);
template Rational unit_rate_time<Rational>(int, const SumOptions&);
template double unit_rate_time<double>(int, const SumOptions&);
template Rational unit_rate_length<Rational>(int, const SumOptions&);
template double unit_rate_length<double>(int, const SumOptions&);

}  // namespace rategraph
