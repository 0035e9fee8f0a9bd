#include "rategraph/assignment.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <thread>

#include "rategraph/combinatorics.hpp"
#include "rategraph/errors.hpp"

namespace rategraph {

namespace {

constexpr int kDefaultBoardCap = 8;

int effective_cap(const SumOptions& options) {
    return options.cap > 0 ? options.cap : kDefaultBoardCap;
}

void check_board_cap(int rows, int cols, const SumOptions& options) {
    const int cap = effective_cap(options);
    if (rows > cap || cols > cap) {
        throw InstanceTooLarge("board " + std::to_string(rows) + "x" + std::to_string(cols) +
                               " exceeds the enumeration cap " + std::to_string(cap));
    }
}

void check_diagonal(int k, int rows, int cols, const char* what) {
    if (k < 1) {
        throw ValidationError(std::string(what) + ": k must be at least 1");
    }
    if (k > std::min(rows, cols)) {
        throw UnreachableTarget(std::string(what) + ": no " + std::to_string(k) +
                                "-assignment fits a " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " board");
    }
}

// Weakly decreasing row-length vectors inside the box, full board included;
// callers skip it where properness matters.
template <class Fn>
void for_each_box_shape(int rows, int cols, Fn&& fn) {
    std::vector<int> lengths(rows, 0);
    auto rec = [&](auto&& self, int row, int max_len) -> void {
        if (row == rows) {
            fn(lengths);
            return;
        }
        for (int len = max_len; len >= 0; --len) {
            lengths[row] = len;
            self(self, row + 1, len);
        }
    };
    rec(rec, 0, cols);
}

// All size-k subsets of `pool`, preserving order.
template <class Fn>
void for_each_combination(const std::vector<int>& pool, int k, Fn&& fn) {
    std::vector<int> chosen;
    chosen.reserve(k);
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(chosen.size()) == k) {
            fn(chosen);
            return;
        }
        const int needed = k - static_cast<int>(chosen.size());
        for (int i = from; i + needed <= static_cast<int>(pool.size()); ++i) {
            chosen.push_back(pool[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
}

// Concrete edge sets realizing a shape: every assignment of the row lengths
// to actual rows, crossed with every nested choice of column supports.
template <class Fn>
void for_each_instance_of_shape(int rows, int cols, const std::vector<int>& shape_lengths,
                                Fn&& fn) {
    std::vector<int> distinct;  // nonzero lengths, descending
    for (int len : shape_lengths) {
        if (len > 0 && (distinct.empty() || distinct.back() != len)) {
            distinct.push_back(len);
        }
    }
    const int levels = static_cast<int>(distinct.size());

    std::vector<int> perm = shape_lengths;
    std::sort(perm.begin(), perm.end());
    std::vector<std::vector<int>> level_cols(levels);

    do {
        auto rec = [&](auto&& self, int level, const std::vector<int>& pool) -> void {
            if (level == levels) {
                EdgeSet edges(rows * cols);
                for (int r = 0; r < rows; ++r) {
                    if (perm[r] == 0) {
                        continue;
                    }
                    const int l = static_cast<int>(
                        std::find(distinct.begin(), distinct.end(), perm[r]) - distinct.begin());
                    for (int c : level_cols[l]) {
                        edges.insert(r * cols + c);
                    }
                }
                fn(edges);
                return;
            }
            for_each_combination(pool, distinct[level], [&](const std::vector<int>& combo) {
                level_cols[level] = combo;
                self(self, level + 1, combo);
            });
        };
        std::vector<int> all_cols(cols);
        for (int c = 0; c < cols; ++c) {
            all_cols[c] = c;
        }
        rec(rec, 0, all_cols);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

struct ShapeJob {
    std::vector<int> lengths;
    BigInt numerator;
};

std::vector<ShapeJob> contributing_shapes(int rows, int cols, int k) {
    std::vector<ShapeJob> jobs;
    for_each_box_shape(rows, cols, [&](const std::vector<int>& lengths) {
        if (lengths.front() == cols && lengths.back() == cols) {
            return;  // full board: not a proper subset
        }
        Shape shape(rows, cols, lengths);
        BigInt numerator = numerator_S(shape, k);
        if (numerator != 0) {
            jobs.push_back({lengths, std::move(numerator)});
        }
    });
    return jobs;
}

// Parallel fold over shape jobs; partials are combined in shape order, so the
// result does not depend on the thread count in either scalar mode.
template <class S, class PerInstance>
std::pair<S, long long> sum_over_shape_jobs(const std::vector<ShapeJob>& jobs, int threads,
                                            PerInstance per_instance) {
    std::vector<std::pair<S, long long>> partials(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) {
                return;
            }
            try {
                S acc{};
                long long count = 0;
                per_instance(jobs[j], acc, count);
                partials[j] = {std::move(acc), count};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };

    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
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

}  // namespace

Shape::Shape(int rows, int cols, std::vector<int> lengths)
    : rows_(rows), cols_(cols), lengths_(std::move(lengths)) {
    if (rows < 1 || cols < 1) {
        throw ValidationError("Shape: dimensions must be at least 1");
    }
    if (static_cast<int>(lengths_.size()) != rows) {
        throw ValidationError("Shape: expected one length per row");
    }
    int prev = cols;
    for (int len : lengths_) {
        if (len < 0 || len > prev) {
            throw ValidationError("Shape: row lengths must be weakly decreasing within the box");
        }
        prev = len;
    }
    if (lengths_.front() == cols && lengths_.back() == cols) {
        throw ValidationError("Shape: the full board is not a proper shape");
    }
}

int Shape::cells() const {
    int total = 0;
    for (int len : lengths_) {
        total += len;
    }
    return total;
}

int Shape::row_length(int row) const {
    if (row < 0 || row > rows_) {
        throw ValidationError("Shape: row out of range");
    }
    return row == 0 ? cols_ : lengths_[row - 1];
}

std::vector<std::pair<int, int>> inner_corners(const Shape& shape) {
    std::vector<std::pair<int, int>> corners;
    for (int r = 0; r < shape.rows(); ++r) {
        if (shape.row_length(r) > shape.row_length(r + 1)) {
            corners.emplace_back(r, shape.row_length(r + 1));
        }
    }
    return corners;
}

std::vector<MidRectangle> mid_rectangles(const Shape& shape, int k) {
    if (k < 1 || k > std::min(shape.rows(), shape.cols())) {
        throw ValidationError("mid_rectangles: k out of range");
    }
    std::vector<MidRectangle> rects;
    for (const auto& [r, c] : inner_corners(shape)) {
        int last = shape.rows();
        if (c > 0) {
            last = r + 1;
            while (last + 1 <= shape.rows() && shape.row_length(last + 1) == c) {
                ++last;
            }
        }
        rects.push_back({last - r, shape.row_length(r) - c, k - r - c});
    }
    return rects;
}

BigInt numerator_S(const Shape& shape, int k) {
    const auto rects = mid_rectangles(shape, k);
    BigInt product = 1;
    for (const MidRectangle& rect : rects) {
        // Out-of-range binomials vanish exactly when the local diagonal
        // leaves its rectangle.
        product *= binomial(rect.rows - 1, rect.diag - 1) * binomial(rect.cols - 1, rect.diag - 1);
        if (product == 0) {
            return product;
        }
    }
    if (rects.size() % 2 == 0) {
        product = -product;
    }
    return product;
}

Shape shape_of(int rows, int cols, const EdgeSet& edges) {
    if (!is_tabloidal(rows, cols, edges)) {
        throw ValidationError("shape_of: edge set is not tabloidal");
    }
    std::vector<int> lengths(rows, 0);
    edges.for_each([&](int e) { ++lengths[e / cols]; });
    std::sort(lengths.begin(), lengths.end(), std::greater<int>());
    return Shape(rows, cols, std::move(lengths));
}

void enumerate_tabloids(int rows, int cols, int k,
                        const std::function<void(const TabloidInstance&)>& visit, int cap) {
    check_diagonal(k, rows, cols, "enumerate_tabloids");
    SumOptions options;
    options.cap = cap;
    check_board_cap(rows, cols, options);

    for (const ShapeJob& job : contributing_shapes(rows, cols, k)) {
        const Shape shape(rows, cols, job.lengths);
        for_each_instance_of_shape(rows, cols, job.lengths, [&](const EdgeSet& edges) {
            visit(TabloidInstance{edges, shape, job.numerator});
        });
    }
}

template <class S>
S expected_time_to_k_assignment(const BipartiteRateGraph& graph, int k,
                                const SumOptions& options) {
    const int rows = graph.rows();
    const int cols = graph.cols();
    check_diagonal(k, rows, cols, "expected_time_to_k_assignment");
    check_board_cap(rows, cols, options);
    if (options.term_count) {
        *options.term_count = 0;
    }

    std::vector<S> cell(graph.edge_count());
    std::vector<char> nz(graph.edge_count());
    long long nz_total = 0;
    for (int e = 0; e < graph.edge_count(); ++e) {
        cell[e] = ScalarOps<S>::from(graph.rate(e));
        nz[e] = graph.rate(e) != 0 ? 1 : 0;
        nz_total += nz[e];
    }
    const S total = ScalarOps<S>::from(graph.total_rate());

    const auto jobs = contributing_shapes(rows, cols, k);
    auto result = sum_over_shape_jobs<S>(
        jobs, options.threads, [&](const ShapeJob& job, S& acc, long long& count) {
            const S numerator = ScalarOps<S>::from(job.numerator);
            for_each_instance_of_shape(rows, cols, job.lengths, [&](const EdgeSet& edges) {
                S inside{};
                long long nz_inside = 0;
                edges.for_each([&](int e) {
                    inside += cell[e];
                    nz_inside += nz[e];
                });
                if (nz_inside == nz_total) {
                    throw UnreachableTarget(
                        "zero remaining rate outside a contributing tabloid; the target "
                        "assignment size is not reachable in finite expected time");
                }
                acc += numerator / (total - inside);
                ++count;
            });
        });
    if (options.term_count) {
        *options.term_count = result.second;
    }
    return std::move(result.first);
}

namespace {

// Shared scaffolding for the two closed forms of the expected minimal
// 2-assignment length: exact row/column/total sums plus a reachability check
// (a 2-assignment must be supported by the positive-rate cells).
struct TwoAssignmentSums {
    Rational total;
    std::vector<Rational> row;
    std::vector<Rational> col;
};

TwoAssignmentSums two_assignment_sums(const BipartiteRateGraph& graph, const char* what) {
    const int rows = graph.rows();
    const int cols = graph.cols();
    if (std::min(rows, cols) < 2) {
        throw DimensionTooSmall(std::string(what) + ": need at least a 2x2 board");
    }
    TwoAssignmentSums sums;
    sums.total = graph.total_rate();
    sums.row.assign(rows, Rational(0));
    sums.col.assign(cols, Rational(0));
    EdgeSet support(graph.edge_count());
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const Rational& a = graph.rate(r, c);
            sums.row[r] += a;
            sums.col[c] += a;
            if (a != 0) {
                support.insert(graph.edge_index(r, c));
            }
        }
    }
    if (matching_size(rows, cols, support) < 2) {
        throw UnreachableTarget(std::string(what) +
                                ": the positive-rate cells contain no 2-assignment");
    }
    return sums;
}

}  // namespace

template <class S>
S expected_min_2assignment_length_v1(const BipartiteRateGraph& graph, const SumOptions& options) {
    const auto sums = two_assignment_sums(graph, "expected_min_2assignment_length_v1");

    long long t1_terms = 0;
    long long t2_terms = 0;
    SumOptions sub = options;
    sub.term_count = &t1_terms;
    S value = expected_time_to_k_assignment<S>(graph, 1, sub);
    sub.term_count = &t2_terms;
    value += expected_time_to_k_assignment<S>(graph, 2, sub);

    long long extra_terms = 0;
    for (int r = 0; r < graph.rows(); ++r) {
        for (int c = 0; c < graph.cols(); ++c) {
            const Rational& a = graph.rate(r, c);
            const Rational row_rest = sums.row[r] - a;
            const Rational col_rest = sums.col[c] - a;
            if (a == 0 || row_rest == 0 || col_rest == 0) {
                continue;
            }
            const Rational d1 = sums.total - a;
            const Rational d2 = sums.total - sums.row[r];
            const Rational d3 = sums.total - sums.col[c];
            if (sums.total == 0 || d1 == 0 || d2 == 0 || d3 == 0) {
                throw UnreachableTarget(
                    "expected_min_2assignment_length_v1: zero denominator with nonzero "
                    "numerator");
            }
            value += ScalarOps<S>::from(a) * ScalarOps<S>::from(row_rest) *
                     ScalarOps<S>::from(col_rest) /
                     (ScalarOps<S>::from(sums.total) * ScalarOps<S>::from(d1) *
                      ScalarOps<S>::from(d2) * ScalarOps<S>::from(d3));
            ++extra_terms;
        }
    }
    if (options.term_count) {
        *options.term_count = t1_terms + t2_terms + extra_terms;
    }
    return value;
}

template <class S>
S expected_min_2assignment_length_v2(const BipartiteRateGraph& graph, const SumOptions& options) {
    const auto sums = two_assignment_sums(graph, "expected_min_2assignment_length_v2");

    S value = ScalarOps<S>::from(2) / ScalarOps<S>::from(sums.total);
    long long terms = 1;
    for (int r = 0; r < graph.rows(); ++r) {
        for (int c = 0; c < graph.cols(); ++c) {
            const Rational& a = graph.rate(r, c);
            const Rational rest = sums.total - a;
            if (a == 0 || rest == 0) {
                continue;
            }
            const Rational d2 = sums.total - sums.row[r];
            const Rational d3 = sums.total - sums.col[c];
            if (d2 == 0 || d3 == 0) {
                throw UnreachableTarget(
                    "expected_min_2assignment_length_v2: zero denominator with nonzero "
                    "numerator");
            }
            value += ScalarOps<S>::from(a) * ScalarOps<S>::from(rest) /
                     (ScalarOps<S>::from(sums.total) * ScalarOps<S>::from(d2) *
                      ScalarOps<S>::from(d3));
            ++terms;
        }
    }
    if (options.term_count) {
        *options.term_count = terms;
    }
    return value;
}

Rational derandomized_assignment_time(int rows, int cols, const std::vector<Rational>& times,
                                      int k, const SumOptions& options) {
    if (static_cast<int>(times.size()) != rows * cols) {
        throw ValidationError("derandomized_assignment_time: expected one time per cell");
    }
    for (const Rational& t : times) {
        if (t <= 0) {
            throw ValidationError("derandomized_assignment_time: times must be positive");
        }
    }
    std::vector<Rational> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("derandomized_assignment_time: times must be pairwise distinct");
    }

    Rational acc = 0;
    long long count = 0;
    enumerate_tabloids(
        rows, cols, k,
        [&](const TabloidInstance& instance) {
            Rational best;
            bool seen = false;
            instance.edges.complement().for_each([&](int e) {
                if (!seen || times[e] < best) {
                    best = times[e];
                    seen = true;
                }
            });
            acc += Rational(instance.numerator) * best;
            ++count;
        },
        options.cap);
    if (options.term_count) {
        *options.term_count = count;
    }
    return acc;
}

template Rational expected_time_to_k_assignment<Rational>(const BipartiteRateGraph&, int,
                                                          const SumOptions&);
template double expected_time_to_k_assignment<double>(const BipartiteRateGraph&, int,
                                                      const SumOptions&);
template Rational expected_min_2assignment_length_v1<Rational>(const BipartiteRateGraph&,
                                                               const SumOptions&);
template double expected_min_2assignment_length_v1<double>(const BipartiteRateGraph&,
                                                           const SumOptions&);
template Rational expected_min_2assignment_length_v2<Rational>(const BipartiteRateGraph&,
                                                               const SumOptions&);
template double expected_min_2assignment_length_v2<double>(const BipartiteRateGraph&,
                                                           const SumOptions&);

}  // namespace rategraph
