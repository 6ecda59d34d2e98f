#pragma once

/**
 * @file paths.hpp
 * @brief Irredundant path enumeration in unit-distance graphs.
 *
 * A path p_0 ... p_k is irredundant when no nonempty subset of its
 * displacement vectors z_i = p_i - p_{i-1} sums to zero. Such paths are
 * simple and have distinct endpoints. The DFS keeps all 2^l subset sums of
 * the current prefix; a continuation z is forbidden iff -z is one of them.
 */

#include "udist/gaussian.hpp"
#include "udist/parallel.hpp"
#include "udist/udgraph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace udist {

inline constexpr int kMaxPathLength = 20;
inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000'000;

/// 64-bit saturating counter; `saturated` records that the true value overflowed.
struct PathCount {
    std::uint64_t value = 0;
    bool saturated = false;

    PathCount& operator+=(const PathCount& o) {
        saturated = saturated || o.saturated;
        if (value > std::numeric_limits<std::uint64_t>::max() - o.value) {
            value = std::numeric_limits<std::uint64_t>::max();
            saturated = true;
        } else {
            value += o.value;
        }
        return *this;
    }
    friend bool operator==(const PathCount&, const PathCount&) = default;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shared cap on DFS node visits; safe to charge from several workers.
class StepBudget {
public:
    explicit StepBudget(std::uint64_t limit = kDefaultStepBudget) : limit_(limit) {}

    void charge(std::uint64_t steps) {
        const auto total = used_.fetch_add(steps, std::memory_order_relaxed) + steps;
        if (total > limit_)
            throw BudgetExceeded("DFS step budget of " + std::to_string(limit_) + " exceeded");
    }
    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

/// Projected effort n * R^k, saturating at the largest uint64.
inline std::uint64_t estimate_dfs_steps(std::uint64_t n, std::uint64_t directions, int k) {
    long double est = static_cast<long double>(n);
    for (int i = 0; i < k; ++i)
        est *= static_cast<long double>(directions);
    if (est >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(est);
}

struct PathRecord {
    std::vector<GaussInt> vertices;
    std::vector<GaussInt> vectors;

    static PathRecord from_vertices(std::vector<GaussInt> vs) {
        PathRecord rec;
        for (std::size_t i = 1; i < vs.size(); ++i)
            rec.vectors.push_back(vs[i] - vs[i - 1]);
        rec.vertices = std::move(vs);
        return rec;
    }
    int length() const { return static_cast<int>(vectors.size()); }
};

/// Exhaustive check over all 2^k - 1 nonempty subsets of the displacement vectors.
inline bool is_irredundant(const PathRecord& path) {
    const int k = path.length();
    if (k < 1)
        throw std::invalid_argument("is_irredundant: path needs at least one edge");
    if (k > kMaxPathLength)
        throw std::invalid_argument("is_irredundant: k > 20 is refused");
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        GaussInt s{0, 0};
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i))
                s += path.vectors[static_cast<std::size_t>(i)];
        if (s.is_zero())
            return false;
    }
    return true;
}

namespace detail {

inline void check_path_length(int k) {
    if (k < 1 || k > kMaxPathLength)
        throw std::invalid_argument("path length k must be in [1, 20]");
}

/// Depth-first enumeration of irredundant paths from one start vertex.
template <class OnPath>
class IrredundantDfs {
public:
    IrredundantDfs(const UnitDistanceGraph& g, int k, OnPath& on_path)
        : g_(g), k_(k), on_path_(on_path), sums_(std::size_t{1} << k), stack_(static_cast<std::size_t>(k) + 1) {}

    /// Returns the number of DFS nodes visited.
    std::uint64_t run(Vertex start) {
        steps_ = 0;
        sums_[0] = {0, 0};
        stack_[0] = start;
        extend(0, start);
        return steps_;
    }

private:
    void extend(int depth, Vertex v) {
        ++steps_;
        if (depth == k_) {
            on_path_(stack_);
            return;
        }
        const std::size_t half = std::size_t{1} << depth;
        const GaussInt here = g_.point(v);
        for (Vertex w : g_.neighbors(v)) {
            const GaussInt z = g_.point(w) - here;
            const GaussInt neg = -z;
            bool forbidden = false;
            for (std::size_t mask = 1; mask < half; ++mask) {
                if (sums_[mask] == neg) {
                    forbidden = true;
                    break;
                }
            }
            if (forbidden)
                continue;
            stack_[static_cast<std::size_t>(depth) + 1] = w;
            if (depth + 1 == k_) {
                ++steps_;
                on_path_(stack_);
                continue;
            }
            for (std::size_t mask = 0; mask < half; ++mask)
                sums_[half | mask] = sums_[mask] + z;
            extend(depth + 1, w);
        }
    }

    const UnitDistanceGraph& g_;
    int k_;
    OnPath& on_path_;
    std::vector<GaussInt> sums_;
    std::vector<Vertex> stack_;
    std::uint64_t steps_ = 0;
};

} // namespace detail

/// Calls fn(PathRecord) for each irredundant k-edge path starting at v.
template <class Fn>
void for_each_irredundant_path(const UnitDistanceGraph& g, Vertex v, int k, Fn&& fn) {
    detail::check_path_length(k);
    auto emit = [&](const std::vector<Vertex>& stack) {
        std::vector<GaussInt> pts;
        pts.reserve(stack.size());
        for (Vertex u : stack)
            pts.push_back(g.point(u));
        fn(PathRecord::from_vertices(std::move(pts)));
    };
    detail::IrredundantDfs dfs(g, k, emit);
    dfs.run(v);
}

inline PathCount count_irredundant_from(const UnitDistanceGraph& g, Vertex v, int k,
                                        StepBudget* budget = nullptr) {
    detail::check_path_length(k);
    if (v >= g.vertex_count())
        throw std::invalid_argument("count_irredundant_from: no such vertex");
    PathCount count;
    auto tally = [&](const std::vector<Vertex>&) { count += PathCount{1, false}; };
    detail::IrredundantDfs dfs(g, k, tally);
    const auto steps = dfs.run(v);
    if (budget)
        budget->charge(steps);
    return count;
}

struct PairCount {
    Vertex v = 0;
    Vertex w = 0;
    PathCount count;
};

struct PairCountSummary {
    bool found = false;       ///< false when no irredundant P_k exists
    PairCount best;           ///< lexicographically first pair among the maximizers
    PathCount total;          ///< all irredundant P_k, ordered endpoints
    std::uint64_t steps = 0;  ///< DFS nodes visited
};

namespace detail {

/// Per-start-vertex endpoint tallies; calls sink(v, endpoint counts) for each start.
template <class Sink>
std::uint64_t scan_pair_counts(const UnitDistanceGraph& g, int k, std::size_t workers, StepBudget* budget,
                               Sink&& sink_for_worker) {
    check_path_length(k);
    std::atomic<std::uint64_t> steps{0};
    parallel_blocks(workers, g.vertex_count(), [&](std::size_t begin, std::size_t end, std::size_t worker) {
        std::vector<std::uint64_t> hits(g.vertex_count(), 0);
        std::vector<Vertex> touched;
        auto tally = [&](const std::vector<Vertex>& stack) {
            const Vertex w = stack.back();
            if (hits[w]++ == 0)
                touched.push_back(w);
        };
        IrredundantDfs dfs(g, k, tally);
        for (std::size_t v = begin; v < end; ++v) {
            const auto used = dfs.run(static_cast<Vertex>(v));
            steps.fetch_add(used, std::memory_order_relaxed);
            if (budget)
                budget->charge(used);
            std::sort(touched.begin(), touched.end());
            sink_for_worker(worker, static_cast<Vertex>(v), touched, hits);
            for (Vertex w : touched)
                hits[w] = 0;
            touched.clear();
        }
    });
    return steps.load();
}

} // namespace detail

/**
 * The ordered pair (v, w) with the most irredundant k-edge paths from v to w.
 * Ties go to the lexicographically smallest (v, w), so the result does not
 * depend on the worker count.
 */
inline PairCountSummary max_pair_count(const UnitDistanceGraph& g, int k, std::size_t workers = 1,
                                       StepBudget* budget = nullptr) {
    workers = std::max<std::size_t>(1, workers);
    std::vector<PairCountSummary> partial(workers);
    auto sink = [&](std::size_t worker, Vertex v, const std::vector<Vertex>& touched,
                    const std::vector<std::uint64_t>& hits) {
        auto& acc = partial[worker];
        for (Vertex w : touched) {
            acc.total += PathCount{hits[w], false};
            if (!acc.found || hits[w] > acc.best.count.value) {
                acc.found = true;
                acc.best = {v, w, {hits[w], false}};
            }
        }
    };
    const auto steps = detail::scan_pair_counts(g, k, workers, budget, sink);
    PairCountSummary out;
    for (const auto& p : partial) {
        out.total += p.total;
        if (!p.found)
            continue;
        const bool better = !out.found || p.best.count.value > out.best.count.value ||
                            (p.best.count.value == out.best.count.value &&
                             std::pair(p.best.v, p.best.w) < std::pair(out.best.v, out.best.w));
        if (better) {
            out.found = true;
            out.best = p.best;
        }
    }
    out.steps = steps;
    return out;
}

/// Every ordered pair with at least one irredundant k-edge path, sorted by (v, w).
inline std::vector<PairCount> all_pair_counts(const UnitDistanceGraph& g, int k, std::size_t workers = 1,
                                              StepBudget* budget = nullptr) {
    workers = std::max<std::size_t>(1, workers);
    std::vector<std::vector<PairCount>> partial(workers);
    auto sink = [&](std::size_t worker, Vertex v, const std::vector<Vertex>& touched,
                    const std::vector<std::uint64_t>& hits) {
        for (Vertex w : touched)
            partial[worker].push_back({v, w, {hits[w], false}});
    };
    detail::scan_pair_counts(g, k, workers, budget, sink);
    std::vector<PairCount> out;
    for (auto& p : partial)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

/// `x_v y_v x_w y_w count` lines in (v, w) order.
inline void write_pair_counts(std::ostream& os, const UnitDistanceGraph& g, const std::vector<PairCount>& pairs) {
    for (const auto& pc : pairs) {
        const GaussInt p = g.point(pc.v);
        const GaussInt q = g.point(pc.w);
        os << p.a << ' ' << p.b << ' ' << q.a << ' ' << q.b << ' ' << pc.count.value << '\n';
    }
}

/// prod_{l=0}^{k-1} max(delta - 2^l + 1, 0): continuations surviving the forbidden set at each step.
inline PathCount path_count_lower_bound(std::int64_t delta, int k) {
    if (delta < 0)
        throw std::invalid_argument("path_count_lower_bound: delta must be nonnegative");
    detail::check_path_length(k);
    PathCount acc{1, false};
    for (int l = 0; l < k; ++l) {
        const std::int64_t factor = delta - (std::int64_t{1} << l) + 1;
        if (factor <= 0)
            return {0, false};
        const auto f = static_cast<std::uint64_t>(factor);
        if (acc.value > std::numeric_limits<std::uint64_t>::max() / f) {
            acc = {std::numeric_limits<std::uint64_t>::max(), true};
        } else if (!acc.saturated) {
            acc.value *= f;
        }
    }
    return acc;
}

} // namespace udist
