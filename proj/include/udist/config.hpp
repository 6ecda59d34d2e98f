#pragma once

/**
 * @file config.hpp
 * @brief Erdos' lower-bound grid configuration and the multiplicative group
 * containing its distance directions.
 *
 * Geometry stays in integer grid units: the grid has step 1 and the target
 * squared distance is m = p_1...p_{r-1}, the product of the first r - 1
 * primes = 1 mod 4. Scaling by 1/sqrt(m) is never performed.
 */

#include "udist/gaussian.hpp"
#include "udist/numtheory.hpp"

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace udist {

struct ConfigParams {
    std::int64_t n = 0;
    int r = 1;
    std::int64_t m = 1;
    std::vector<std::int64_t> primes; ///< the first r - 1 primes = 1 mod 4
    std::int64_t side = 0;            ///< floor(sqrt(n))
};

using PointSet = std::vector<GaussInt>;

/// Rational exponent num/den applied to m; kept symbolic.
struct RationalExponent {
    std::int64_t num = 0;
    std::int64_t den = 1;
    friend bool operator==(const RationalExponent&, const RationalExponent&) = default;
};

struct GeneratorSet {
    std::vector<std::pair<GaussInt, GaussInt>> pairs; ///< ((x_j, y_j), (x_j, -y_j))
    RationalExponent scale_exponent;                  ///< -1/(2r-2)

    std::vector<GaussInt> atoms() const {
        std::vector<GaussInt> out;
        for (const auto& pr : pairs)
            out.push_back(pr.first);
        return out;
    }
    std::size_t generator_count() const { return 2 * pairs.size(); }
    std::size_t rank_bound() const { return pairs.size(); }
};

/**
 * Largest r with 4 p_1...p_{r-1} <= n, so that
 * 4 p_1...p_{r-1} <= n < 4 p_1...p_r. For n < 20 this is r = 1, m = 1.
 */
inline ConfigParams choose_params(std::int64_t n) {
    if (n < 4)
        throw std::invalid_argument("choose_params: n must be at least 4");
    ConfigParams params;
    params.n = n;
    params.side = detail::isqrt(n);
    const APClass one_mod_four(4, 1);
    std::int64_t m = 1;
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t p = kth_prime_in_ap(k, one_mod_four);
        if (m > n / (4 * p))
            break;
        m *= p;
        params.primes.push_back(p);
    }
    params.m = m;
    params.r = static_cast<int>(params.primes.size()) + 1;
    return params;
}

/// The side x side integer grid, in ascending lexicographic order.
inline PointSet build_config(const ConfigParams& params) {
    PointSet points;
    points.reserve(static_cast<std::size_t>(params.side * params.side));
    for (std::int64_t x = 0; x < params.side; ++x)
        for (std::int64_t y = 0; y < params.side; ++y)
            points.push_back({x, y});
    return points;
}

inline GeneratorSet generators(const ConfigParams& params) {
    if (params.r < 2)
        throw std::invalid_argument("generators: r must be at least 2 (r = 1 has no free generators)");
    GeneratorSet gens;
    for (std::int64_t p : params.primes) {
        auto [x, y] = two_squares_prime(p);
        gens.pairs.push_back({{x, y}, {x, -y}});
    }
    gens.scale_exponent = {-1, 2 * static_cast<std::int64_t>(params.r) - 2};
    return gens;
}

/// Per-prime choice: +1 for (x_j, y_j), -1 for (x_j, -y_j), together with a unit.
struct EdgeSelection {
    std::vector<int> signs;
    Unit unit;
};

/// Factor a norm-m direction over the generator atoms. Failure indicates a defect.
inline EdgeSelection verify_edge_in_group(GaussInt v, const GeneratorSet& gens) {
    std::int64_t m = 1;
    for (const auto& pr : gens.pairs)
        m *= pr.first.norm();
    if (v.norm() != m)
        throw std::invalid_argument("verify_edge_in_group: direction does not have norm m");
    auto f = factor_over(v, gens.atoms());
    if (!f)
        throw std::logic_error("verify_edge_in_group: direction is outside the generated group");
    EdgeSelection sel;
    sel.unit = f->unit;
    for (bool c : f->conjugated)
        sel.signs.push_back(c ? -1 : 1);
    return sel;
}

struct RankWindow {
    double low = 0.0;
    double high = 0.0;
};

/// (log n / (3 log log n), 16 log n / log log n), natural logs.
inline constexpr double kMinRankWindowN = 16.0;

inline RankWindow rank_bounds(double n) {
    // Smallest integer above e^e; below it log log n is zero or rounding noise.
    if (!(n >= kMinRankWindowN))
        throw std::invalid_argument("rank_bounds: requires n >= 16 (log log n > 0)");
    const double ln = std::log(n);
    const double lln = std::log(ln);
    return {ln / (3.0 * lln), 16.0 * ln / lln};
}

inline nlohmann::ordered_json to_json(const ConfigParams& p) {
    nlohmann::ordered_json j;
    j["n"] = p.n;
    j["r"] = p.r;
    j["m"] = p.m;
    j["primes"] = p.primes;
    j["side"] = p.side;
    return j;
}

/// One `x y` pair per line, in the order given.
inline void write_points(std::ostream& os, const PointSet& points) {
    for (GaussInt p : points)
        os << p.a << ' ' << p.b << '\n';
}

inline PointSet read_points(std::istream& is) {
    PointSet points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        GaussInt p;
        std::string trailing;
        if (!(ls >> p.a >> p.b) || (ls >> trailing))
            throw std::invalid_argument("point file line " + std::to_string(lineno) +
                                        ": expected two integers");
        points.push_back(p);
    }
    return points;
}

} // namespace udist
