#pragma once

/**
 * @file udgraph.hpp
 * @brief Exact unit-distance graphs over integer point sets, and min-degree
 * peeling.
 *
 * Two points are adjacent iff their squared distance is exactly m. Graphs are
 * built by the displacement-vector method: every lattice solution of
 * x^2 + y^2 = m is probed from every point through a hash index, costing
 * O(n * R(m)) rather than O(n^2).
 */

#include "udist/config.hpp"
#include "udist/gaussian.hpp"
#include "udist/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace udist {

using Vertex = std::uint32_t;

/// All (x, y) in Z^2 with x^2 + y^2 = m, lexicographic. Works for any m >= 0.
inline std::vector<GaussInt> lattice_vectors_of_norm(std::int64_t m) {
    if (m < 0)
        throw std::invalid_argument("lattice_vectors_of_norm: m must be nonnegative");
    std::vector<GaussInt> out;
    if (auto primes = split_prime_factors(m)) {
        out = representations(*primes);
        return out;
    }
    const std::int64_t root = detail::isqrt(m);
    for (std::int64_t x = -root; x <= root; ++x) {
        const std::int64_t rest = m - x * x;
        const std::int64_t y = detail::isqrt(rest);
        if (y * y != rest)
            continue;
        out.push_back({x, -y});
        if (y != 0)
            out.push_back({x, y});
    }
    return out;
}

class UnitDistanceGraph {
public:
    UnitDistanceGraph() = default;

    const PointSet& points() const { return points_; }
    std::int64_t m() const { return m_; }
    std::size_t vertex_count() const { return points_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
    GaussInt point(Vertex v) const { return points_[v]; }

    /// Index of a point, or -1 when absent.
    std::int64_t find(GaussInt p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
    }

    /// Graph over already-sorted, distinct points with given adjacency.
    static UnitDistanceGraph from_parts(PointSet points, std::int64_t m,
                                        std::vector<std::vector<Vertex>> adjacency) {
        UnitDistanceGraph g;
        g.points_ = std::move(points);
        g.m_ = m;
        g.adjacency_ = std::move(adjacency);
        std::size_t degree_sum = 0;
        for (const auto& nb : g.adjacency_)
            degree_sum += nb.size();
        g.edge_count_ = degree_sum / 2;
        g.index_.reserve(g.points_.size());
        for (Vertex v = 0; v < g.points_.size(); ++v)
            g.index_.emplace(g.points_[v], v);
        return g;
    }

private:
    PointSet points_;
    std::int64_t m_ = 0;
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
    std::unordered_map<GaussInt, Vertex, GaussIntHash> index_;
};

/**
 * Unit-distance graph on `points` at squared distance m. Vertices are the
 * points in ascending lexicographic order; neighbor lists are sorted.
 */
inline UnitDistanceGraph build_graph(PointSet points, std::int64_t m, std::size_t workers = 1) {
    if (m < 1)
        throw std::invalid_argument("build_graph: m must be at least 1");
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end())
        throw std::invalid_argument("build_graph: duplicate points");
    if (points.size() >= std::numeric_limits<Vertex>::max())
        throw std::invalid_argument("build_graph: too many points");

    std::unordered_map<GaussInt, Vertex, GaussIntHash> index;
    index.reserve(points.size());
    for (Vertex v = 0; v < points.size(); ++v)
        index.emplace(points[v], v);

    const auto directions = lattice_vectors_of_norm(m);
    std::vector<std::vector<Vertex>> adjacency(points.size());
    parallel_blocks(workers, points.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t v = begin; v < end; ++v) {
            auto& nb = adjacency[v];
            for (GaussInt z : directions) {
                auto it = index.find(points[v] + z);
                if (it != index.end())
                    nb.push_back(it->second);
            }
            std::sort(nb.begin(), nb.end());
        }
    });
    return UnitDistanceGraph::from_parts(std::move(points), m, std::move(adjacency));
}

struct DegreeSummary {
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
};

inline DegreeSummary degree_summary(const UnitDistanceGraph& g) {
    DegreeSummary s;
    s.vertex_count = g.vertex_count();
    s.edge_count = g.edge_count();
    if (s.vertex_count == 0)
        return s;
    s.min_degree = g.degree(0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        s.min_degree = std::min(s.min_degree, g.degree(v));
        s.max_degree = std::max(s.max_degree, g.degree(v));
    }
    return s;
}

/// e(G) / (2 v(G)), a quarter of the average degree; 0 for the empty graph.
inline double default_peel_threshold(const UnitDistanceGraph& g) {
    if (g.vertex_count() == 0)
        return 0.0;
    return static_cast<double>(g.edge_count()) / (2.0 * static_cast<double>(g.vertex_count()));
}

/**
 * Induced subgraph left after repeatedly deleting vertices of current degree
 * below `threshold`. The result has minimum degree >= threshold (or is empty)
 * and loses fewer than v(G) * threshold edges.
 */
inline UnitDistanceGraph peel(const UnitDistanceGraph& g, double threshold) {
    if (threshold < 0.0)
        throw std::invalid_argument("peel: threshold must be nonnegative");
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> degree(n);
    std::vector<bool> removed(n, false);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        degree[v] = g.degree(v);
        if (static_cast<double>(degree[v]) < threshold) {
            removed[v] = true;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (removed[w])
                continue;
            if (static_cast<double>(--degree[w]) < threshold) {
                removed[w] = true;
                queue.push_back(w);
            }
        }
    }

    std::vector<std::int64_t> remap(n, -1);
    PointSet kept;
    for (Vertex v = 0; v < n; ++v) {
        if (!removed[v]) {
            remap[v] = static_cast<std::int64_t>(kept.size());
            kept.push_back(g.point(v));
        }
    }
    std::vector<std::vector<Vertex>> adjacency(kept.size());
    for (Vertex v = 0; v < n; ++v) {
        if (removed[v])
            continue;
        auto& nb = adjacency[static_cast<std::size_t>(remap[v])];
        for (Vertex w : g.neighbors(v))
            if (!removed[w])
                nb.push_back(static_cast<Vertex>(remap[w]));
    }
    return UnitDistanceGraph::from_parts(std::move(kept), g.m(), std::move(adjacency));
}

inline UnitDistanceGraph peel(const UnitDistanceGraph& g) { return peel(g, default_peel_threshold(g)); }

/// Edge list `x1 y1 x2 y2`, one line per edge with (x1, y1) < (x2, y2), lexicographically sorted.
inline void write_edges(std::ostream& os, const UnitDistanceGraph& g) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const GaussInt p = g.point(v);
        for (Vertex w : g.neighbors(v)) {
            if (w <= v)
                continue;
            const GaussInt q = g.point(w);
            os << p.a << ' ' << p.b << ' ' << q.a << ' ' << q.b << '\n';
        }
    }
}

} // namespace udist
