#pragma once

/**
 * @file report.hpp
 * @brief End-to-end verification run over one configuration size.
 *
 * choose_params -> build_config -> build_graph -> peel -> irredundant paths
 * -> bounds, with each check recorded together with both evaluated sides.
 * The JSON rendering is deterministic: no timings, fixed key order, and
 * results that do not depend on the worker count.
 */

#include "udist/bounds.hpp"
#include "udist/config.hpp"
#include "udist/gaussian.hpp"
#include "udist/numtheory.hpp"
#include "udist/paths.hpp"
#include "udist/udgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace udist {

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation = "<=";
    bool pass = false;
};

struct PathStats {
    int k = 0;
    std::size_t start_vertices = 0;  ///< vertices whose outgoing path counts were checked
    PathCount min_from_vertex;       ///< fewest irredundant P_k out of a checked vertex
    PathCount lower_bound;           ///< prod (delta(H) - 2^l + 1)
    bool pairs_counted = false;
    bool pair_found = false;
    PathCount total_paths;           ///< over all ordered endpoint pairs
    GaussInt best_v;
    GaussInt best_w;
    PathCount best_count;            ///< |P_vw| for the maximizing pair
    double pigeonhole = 0.0;         ///< ceil(total / v(H)^2)
    double log2_max_pair = 0.0;
    double log2_a = 0.0;
};

struct RunReport {
    ConfigParams params;
    std::size_t edge_count = 0;
    DegreeSummary degrees;
    DegreeSummary peeled;
    double peel_threshold = 0.0;
    std::optional<RankWindow> rank_window;
    std::vector<PathStats> path_stats;
    std::vector<BoundCheck> bound_checks;

    bool all_pass() const {
        return std::all_of(bound_checks.begin(), bound_checks.end(), [](const BoundCheck& c) { return c.pass; });
    }
};

struct VerifyOptions {
    std::int64_t n = 100;
    int k_max = 3;
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    std::uint64_t step_budget = kDefaultStepBudget;
    /// Start vertices checked against the path lower bound; all vertices when v(H) is at most this.
    std::size_t sampled_starts = 50;
    /// Whether max_pair_count runs (it scans every start vertex).
    bool pair_counts = true;
};

inline constexpr int kMaxVerifyK = 6;

namespace detail {
inline void add_check(RunReport& rep, std::string name, double lhs, double rhs, bool pass,
                      std::string relation = "<=") {
    rep.bound_checks.push_back({std::move(name), lhs, rhs, std::move(relation), pass});
}

inline std::vector<Vertex> sample_vertices(std::size_t count, std::size_t want, std::uint64_t seed) {
    std::vector<Vertex> all(count);
    for (std::size_t i = 0; i < count; ++i)
        all[i] = static_cast<Vertex>(i);
    if (count <= want)
        return all;
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates with an explicit index draw keeps the sample identical across standard libraries.
    for (std::size_t i = 0; i < want; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (count - i));
        std::swap(all[i], all[j]);
    }
    all.resize(want);
    std::sort(all.begin(), all.end());
    return all;
}
} // namespace detail

/// Projected DFS steps for the path section of verify_all.
inline std::uint64_t projected_verify_steps(const VerifyOptions& opt) {
    const auto params = choose_params(opt.n);
    const auto directions = lattice_vectors_of_norm(params.m).size();
    const auto n = static_cast<std::uint64_t>(params.side * params.side);
    return estimate_dfs_steps(n, directions, opt.k_max);
}

inline RunReport verify_all(const VerifyOptions& opt, StepBudget* budget = nullptr) {
    if (opt.n < 4)
        throw std::invalid_argument("verify: n must be at least 4");
    if (opt.k_max < 1 || opt.k_max > kMaxVerifyK)
        throw std::invalid_argument("verify: k-max must be in [1, 6]");

    RunReport rep;
    rep.params = choose_params(opt.n);
    const auto& p = rep.params;

    // Configuration sandwich and the theta bound on the chosen primes.
    detail::add_check(rep, "config.sandwich_lower", 4.0 * static_cast<double>(p.m), static_cast<double>(p.n),
                      4 * p.m <= p.n);
    const std::int64_t next = kth_prime_in_ap(p.r, APClass(4, 1));
    detail::add_check(rep, "config.sandwich_upper", static_cast<double>(p.n), 4.0 * static_cast<double>(p.m) * next,
                      p.n < 4 * p.m * next, "<");
    if (!p.primes.empty()) {
        const PrimeTable table(p.primes.back());
        const double theta = chebyshev(table, ChebyshevKind::theta, p.primes.back(), APClass(4, 1));
        const double rhs = std::log(static_cast<double>(p.n) / 4.0);
        detail::add_check(rep, "config.theta_4_1_le_log_n_over_4", theta, rhs,
                          4 * p.m <= p.n && theta <= rhs * (1.0 + 1e-12));
    }
    if (static_cast<double>(p.n) >= kMinRankWindowN) {
        rep.rank_window = rank_bounds(static_cast<double>(p.n));
        detail::add_check(rep, "rank.lower", rep.rank_window->low, p.r, rep.rank_window->low <= p.r);
        detail::add_check(rep, "rank.upper", p.r, rep.rank_window->high, p.r <= rep.rank_window->high);
    }

    // Representations of m and the group they generate.
    const auto reps = representations(p.primes);
    const double expected_reps = std::ldexp(1.0, static_cast<int>(p.primes.size()) + 2);
    detail::add_check(rep, "reps.count_eq_2^(t+2)", static_cast<double>(reps.size()), expected_reps,
                      static_cast<double>(reps.size()) == expected_reps, "==");
    if (p.r >= 2) {
        const auto gens = generators(p);
        std::size_t ok = 0;
        for (GaussInt v : reps) {
            try {
                verify_edge_in_group(v, gens);
                ++ok;
            } catch (const std::logic_error&) {
            }
        }
        detail::add_check(rep, "group.directions_factored", static_cast<double>(ok), static_cast<double>(reps.size()),
                          ok == reps.size(), "==");
        bool conj_products = true;
        for (const auto& [z, w] : gens.pairs)
            conj_products = conj_products && gmul(z, w) == GaussInt{z.norm(), 0};
        detail::add_check(rep, "group.conjugate_pairs_real", conj_products ? 1.0 : 0.0, 1.0, conj_products, "==");
    }

    // Graph.
    const auto graph = build_graph(build_config(p), p.m, opt.workers);
    rep.edge_count = graph.edge_count();
    rep.degrees = degree_summary(graph);
    const double n_points = static_cast<double>(graph.vertex_count());
    const double nn = static_cast<double>(p.n);
    detail::add_check(rep, "edges.lower_n_2^(r-1)/16", nn * std::ldexp(1.0, p.r - 1) / 16.0,
                      static_cast<double>(rep.edge_count), nn * std::ldexp(1.0, p.r - 1) / 16.0 <= rep.edge_count);
    detail::add_check(rep, "edges.upper_2^(r+3)n", static_cast<double>(rep.edge_count), std::ldexp(nn, p.r + 3),
                      static_cast<double>(rep.edge_count) <= std::ldexp(nn, p.r + 3));
    detail::add_check(rep, "degree.max_le_2^(r+3)", static_cast<double>(rep.degrees.max_degree),
                      std::ldexp(1.0, p.r + 3), static_cast<double>(rep.degrees.max_degree) <= std::ldexp(1.0, p.r + 3));

    // Peeling.
    rep.peel_threshold = default_peel_threshold(graph);
    const auto h = peel(graph, rep.peel_threshold);
    rep.peeled = degree_summary(h);
    if (h.vertex_count() > 0)
        detail::add_check(rep, "peel.min_degree_ge_threshold", rep.peel_threshold,
                          static_cast<double>(rep.peeled.min_degree),
                          rep.peel_threshold <= static_cast<double>(rep.peeled.min_degree));
    const double lost = static_cast<double>(graph.edge_count()) - static_cast<double>(h.edge_count());
    detail::add_check(rep, "peel.edges_lost_le_v_threshold", lost, n_points * rep.peel_threshold,
                      lost <= n_points * rep.peel_threshold);

    // Paths.
    StepBudget local_budget(opt.step_budget);
    StepBudget& steps = budget ? *budget : local_budget;
    const auto starts = detail::sample_vertices(h.vertex_count(), opt.sampled_starts, opt.seed);
    const int rank = std::max(0, p.r - 1);
    for (int k = 1; k <= opt.k_max; ++k) {
        PathStats ps;
        ps.k = k;
        ps.start_vertices = starts.size();
        ps.lower_bound = path_count_lower_bound(static_cast<std::int64_t>(rep.peeled.min_degree), k);
        ps.log2_a = log2_A(k, rank);
        bool first = true;
        for (Vertex v : starts) {
            const auto c = count_irredundant_from(h, v, k, &steps);
            if (first || c.value < ps.min_from_vertex.value)
                ps.min_from_vertex = c;
            first = false;
        }
        if (!starts.empty())
            detail::add_check(rep, "paths.k" + std::to_string(k) + ".count_ge_lower_bound",
                              static_cast<double>(ps.lower_bound.value), static_cast<double>(ps.min_from_vertex.value),
                              ps.lower_bound.value <= ps.min_from_vertex.value);
        if (opt.pair_counts) {
            const auto pairs = max_pair_count(h, k, opt.workers, &steps);
            ps.pairs_counted = true;
            ps.pair_found = pairs.found;
            ps.total_paths = pairs.total;
            ps.best_count = pairs.best.count;
            if (pairs.found) {
                ps.best_v = h.point(pairs.best.v);
                ps.best_w = h.point(pairs.best.w);
            }
            const double vh = static_cast<double>(h.vertex_count());
            ps.pigeonhole = vh > 0 ? std::ceil(static_cast<double>(pairs.total.value) / (vh * vh)) : 0.0;
            const double best = static_cast<double>(pairs.best.count.value);
            detail::add_check(rep, "paths.k" + std::to_string(k) + ".max_pair_ge_pigeonhole", ps.pigeonhole, best,
                              ps.pigeonhole <= best);
            ps.log2_max_pair = best > 0 ? std::log2(best) : 0.0;
            detail::add_check(rep, "paths.k" + std::to_string(k) + ".log2_max_pair_le_log2_A", ps.log2_max_pair,
                              ps.log2_a, ps.log2_max_pair <= ps.log2_a);
        }
        rep.path_stats.push_back(ps);
    }
    return rep;
}

inline nlohmann::ordered_json to_json(const PathCount& c) {
    nlohmann::ordered_json j = c.value;
    if (c.saturated)
        j = nlohmann::ordered_json{{"value", c.value}, {"saturated", true}};
    return j;
}

inline nlohmann::ordered_json to_json(const DegreeSummary& s) {
    return {{"min_degree", s.min_degree},
            {"max_degree", s.max_degree},
            {"vertex_count", s.vertex_count},
            {"edge_count", s.edge_count}};
}

inline nlohmann::ordered_json to_json(const RunReport& rep) {
    nlohmann::ordered_json j;
    j["params"] = to_json(rep.params);
    j["edge_count"] = rep.edge_count;
    j["degree_summary"] = to_json(rep.degrees);
    j["peel"] = {{"threshold", rep.peel_threshold}, {"subgraph", to_json(rep.peeled)}};
    if (rep.rank_window)
        j["rank_window"] = {rep.rank_window->low, rep.rank_window->high};
    else
        j["rank_window"] = nullptr;
    auto stats = nlohmann::ordered_json::array();
    for (const auto& ps : rep.path_stats) {
        nlohmann::ordered_json s;
        s["k"] = ps.k;
        s["start_vertices"] = ps.start_vertices;
        s["min_from_vertex"] = to_json(ps.min_from_vertex);
        s["lower_bound"] = to_json(ps.lower_bound);
        if (ps.pairs_counted) {
            s["total_paths"] = to_json(ps.total_paths);
            if (ps.pair_found) {
                nlohmann::ordered_json best;
                best["v"] = {ps.best_v.a, ps.best_v.b};
                best["w"] = {ps.best_w.a, ps.best_w.b};
                best["count"] = to_json(ps.best_count);
                s["max_pair"] = best;
            } else {
                s["max_pair"] = nullptr;
            }
            s["pigeonhole"] = ps.pigeonhole;
            s["log2_max_pair"] = ps.log2_max_pair;
        }
        s["log2_A"] = ps.log2_a;
        stats.push_back(s);
    }
    j["path_stats"] = stats;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.bound_checks)
        checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"relation", c.relation}, {"rhs", c.rhs}, {"pass", c.pass}});
    j["bound_checks"] = checks;
    j["all_pass"] = rep.all_pass();
    return j;
}

} // namespace udist
