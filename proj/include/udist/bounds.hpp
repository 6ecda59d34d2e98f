#pragma once

/**
 * @file bounds.hpp
 * @brief Closed-form bounds around the unit-equation path argument, plus a
 * brute-force counter of nondegenerate unit-equation solutions.
 *
 * The solution bound A(k, r) = (8k)^(4k^4(k+kr+1)) is only ever handled as a
 * base-2 logarithm. Inequalities taking n use log n directly so that
 * astronomically large n (say e^1000) stay representable.
 */

#include "udist/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace udist {

/// log2 A(k, r) = 4k^4 (k + kr + 1) log2(8k).
inline double log2_A(int k, int r) {
    if (k < 1 || r < 0)
        throw std::invalid_argument("log2_A: requires k >= 1 and r >= 0");
    const double kd = k;
    return 4.0 * std::pow(kd, 4) * (kd + kd * r + 1.0) * std::log2(8.0 * kd);
}

/// 5 r k^4 log k / log n + 3 / (2k), natural logs.
inline double epsilon_rhs(int k, int r, double log_n) {
    if (k < 2)
        throw std::invalid_argument("epsilon_rhs: requires k >= 2");
    if (r < 0)
        throw std::invalid_argument("epsilon_rhs: requires r >= 0");
    if (!(log_n >= std::log(3.0)))
        throw std::invalid_argument("epsilon_rhs: requires n >= 3");
    const double kd = k;
    return 5.0 * r * std::pow(kd, 4) * std::log(kd) / log_n + 3.0 / (2.0 * kd);
}

/**
 * Principal branch of Lambert W on [0, inf): the w >= 0 with w e^w = x.
 * Halley iteration from log(1 + x).
 */
inline double lambert_w(double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("lambert_w: requires finite x >= 0");
    if (x == 0.0)
        return 0.0;
    double w = std::log1p(x);
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double fp = ew * (w + 1.0);
        const double step = f / (fp - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w)))
            break;
    }
    return w;
}

struct KWindowConstants {
    double c_lo = 0.0; ///< c'
    double c_hi = 0.0; ///< c''
};

/// Integer k in [k_min, k_max] minimizing epsilon_rhs(k, r, log n); ties go to the smaller k.
inline int argmin_epsilon_k(int r, double log_n, int k_min = 2, int k_max = 64) {
    int best = k_min;
    double best_val = epsilon_rhs(k_min, r, log_n);
    for (int k = k_min + 1; k <= k_max; ++k) {
        const double v = epsilon_rhs(k, r, log_n);
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }
    return best;
}

inline double k_star(double log_n, int r, double c2) {
    return std::exp(lambert_w(5.0 * c2 * log_n / r) / 5.0);
}

/**
 * Calibrate c', c'' so that c' (log n / r)^(1/5) <= k <= c'' (log n / r)^(1/5)
 * brackets both the integer minimizer of epsilon_rhs over k in [2, 64] and
 * k_star, across the supplied (log n, r) grid.
 */
inline KWindowConstants calibrate_k_window(const std::vector<double>& log_ns, const std::vector<int>& ranks,
                                           double c2 = 1.0) {
    KWindowConstants c{std::numeric_limits<double>::infinity(), 0.0};
    for (double ln : log_ns) {
        for (int r : ranks) {
            const double scale = std::pow(ln / r, 0.2);
            const double k_min = argmin_epsilon_k(r, ln);
            const double ks = k_star(ln, r, c2);
            c.c_lo = std::min(c.c_lo, std::min(k_min, ks) / scale);
            c.c_hi = std::max(c.c_hi, std::max(k_min, ks) / scale);
        }
    }
    return c;
}

/// The default calibration grid: log n in {10, 20, 50, 100, 200, 500, 1000}, r in {1, 2, 3, 5, 8}.
inline const KWindowConstants& default_k_window_constants() {
    static const KWindowConstants c =
        calibrate_k_window({10, 20, 50, 100, 200, 500, 1000}, {1, 2, 3, 5, 8}, 1.0);
    return c;
}

struct KWindow {
    double k_star = 0.0;
    double k_lo = 0.0;
    double k_hi = 0.0;
    bool contained = false; ///< k_lo <= k_star <= k_hi
};

inline KWindow optimal_k_window(double log_n, int r, double c2 = 1.0,
                                const KWindowConstants& c = default_k_window_constants()) {
    if (r < 1)
        throw std::invalid_argument("optimal_k_window: requires r >= 1");
    if (!(log_n >= std::log(3.0)))
        throw std::invalid_argument("optimal_k_window: requires n >= 3");
    if (!(c2 > 0.0))
        throw std::invalid_argument("optimal_k_window: requires c2 > 0");
    KWindow w;
    const double scale = std::pow(log_n / r, 0.2);
    w.k_star = k_star(log_n, r, c2);
    w.k_lo = c.c_lo * scale;
    w.k_hi = c.c_hi * scale;
    w.contained = w.k_lo <= w.k_star && w.k_star <= w.k_hi;
    return w;
}

/// k < eps log n / log 2 - 1, the range where 2^k <= n^eps / 2.
inline bool k_feasible(int k, double epsilon, double log_n) {
    return k < epsilon * log_n / std::log(2.0) - 1.0;
}

struct AbsorptionCheck {
    double lhs = 0.0; ///< k log 4 + 4k^4 (k + kr + 1) log(8k)
    double rhs = 0.0; ///< 5 r k^5 log k
    bool holds = false;
};

/// Evaluates whether the path-count exponent is absorbed into 5 r k^5 log k at this (k, r).
inline AbsorptionCheck absorption_check(int k, int r) {
    if (k < 1 || r < 0)
        throw std::invalid_argument("absorption_check: requires k >= 1 and r >= 0");
    const double kd = k;
    AbsorptionCheck a;
    a.lhs = kd * std::log(4.0) + 4.0 * std::pow(kd, 4) * (kd + kd * r + 1.0) * std::log(8.0 * kd);
    a.rhs = 5.0 * r * std::pow(kd, 5) * std::log(kd);
    a.holds = a.lhs <= a.rhs;
    return a;
}

struct RankConstant {
    double c = 0.0; ///< largest c with min_k epsilon_rhs(k, c log n, log n) < eps over feasible k
    int k = 0;      ///< the k attaining it; 0 when no feasible k exists
};

/**
 * For target eps, the largest c such that a rank r = c log n still admits a
 * feasible k in [2, 64] with epsilon_rhs(k, r, n) < eps. Solving the
 * inequality for r gives c = (eps - 3/(2k)) / (5 k^4 log k).
 */
inline RankConstant largest_rank_constant(double epsilon, double log_n) {
    RankConstant best;
    for (int k = 2; k <= 64; ++k) {
        if (!k_feasible(k, epsilon, log_n))
            break;
        const double kd = k;
        const double c = (epsilon - 3.0 / (2.0 * kd)) / (5.0 * std::pow(kd, 4) * std::log(kd));
        if (c > best.c) {
            best.c = c;
            best.k = k;
        }
    }
    return best;
}

struct BoundRow {
    int k = 0;
    int r = 0;
    double log_n = 0.0;
    double log2_a = 0.0;
    double epsilon = 0.0;
    double k_star = 0.0;
    bool feasible_k = false;
};

/**
 * One report row. The feasibility flag tests k against the exponent the row
 * itself certifies (eps = epsilon_rhs) unless an explicit eps is given.
 */
inline BoundRow bound_row(int k, int r, double log_n, double c2 = 1.0, double epsilon = -1.0) {
    BoundRow row;
    row.k = k;
    row.r = r;
    row.log_n = log_n;
    row.log2_a = log2_A(k, r);
    row.epsilon = epsilon_rhs(k, r, log_n);
    row.k_star = r >= 1 ? k_star(log_n, r, c2) : std::numeric_limits<double>::quiet_NaN();
    row.feasible_k = k_feasible(k, epsilon > 0.0 ? epsilon : row.epsilon, log_n);
    return row;
}

inline void write_bound_csv(std::ostream& os, const std::vector<BoundRow>& rows) {
    os << "k,r,n,log2_A,epsilon_rhs,k_star,feasible_k_flag\n";
    for (const auto& row : rows) {
        os << row.k << ',' << row.r << ",exp(" << row.log_n << ")," << row.log2_a << ',' << row.epsilon << ',';
        if (std::isnan(row.k_star))
            os << "nan";
        else
            os << row.k_star;
        os << ',' << (row.feasible_k ? 1 : 0) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Nondegenerate solutions of a_1 z_1 + ... + a_k z_k = 1 over explicit groups

/// Finitely generated subgroup of C^*: roots of unity of order `torsion_order`
/// times the free part generated by exact Gaussian-rational generators.
struct GroupSpec {
    int torsion_order = 1;
    std::vector<CycloNumber> free_generators;

    int rank() const { return static_cast<int>(free_generators.size()); }

    void validate() const {
        if (torsion_order < 1 || 12 % torsion_order != 0)
            throw std::invalid_argument("GroupSpec: torsion order must divide 12");
        for (const auto& g : free_generators)
            if (g.is_zero())
                throw std::invalid_argument("GroupSpec: generators must be nonzero");
    }
};

inline constexpr int kMaxUnitEquationTerms = 4;
inline constexpr int kMaxUnitEquationHeight = 8;
inline constexpr double kUnitEquationBudget = 5e7;

struct NondegenerateSolutions {
    std::size_t count = 0;
    std::vector<std::vector<CycloNumber>> solutions; ///< in enumeration order
    std::size_t group_elements = 0;                  ///< distinct elements within height H
};

/// Distinct elements tau * g_1^e_1 ... g_r^e_r with |e_j| <= height, sorted.
inline std::vector<CycloNumber> group_elements(const GroupSpec& group, int height) {
    group.validate();
    std::vector<CycloNumber> elems;
    for (int t = 0; t < group.torsion_order; ++t)
        elems.push_back(CycloNumber::zeta_power(t * (12 / group.torsion_order)));
    for (const auto& g : group.free_generators) {
        std::vector<CycloNumber> powers;
        for (int e = -height; e <= height; ++e)
            powers.push_back(g.pow(e));
        std::vector<CycloNumber> next;
        next.reserve(elems.size() * powers.size());
        for (const auto& x : elems)
            for (const auto& p : powers)
                next.push_back(x * p);
        elems = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return elems;
}

/// True iff every nonempty subset J of the terms has sum_{j in J} a_j z_j != 0.
inline bool is_nondegenerate(const std::vector<CycloNumber>& coeffs, const std::vector<CycloNumber>& z) {
    const std::size_t k = coeffs.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        CycloNumber s;
        for (std::size_t j = 0; j < k; ++j)
            if (mask & (1u << j))
                s += coeffs[j] * z[j];
        if (s.is_zero())
            return false;
    }
    return true;
}

/**
 * Every nondegenerate solution of a_1 z_1 + ... + a_k z_k = 1 with each z_i in
 * the group and all exponents bounded by `height`. The first k - 1 slots are
 * enumerated and the last is solved for, then tested for group membership.
 */
inline NondegenerateSolutions enumerate_nondegenerate(const std::vector<CycloNumber>& coeffs,
                                                      const GroupSpec& group, int height) {
    const int k = static_cast<int>(coeffs.size());
    if (k < 1 || k > kMaxUnitEquationTerms)
        throw std::invalid_argument("enumerate_nondegenerate: requires 1 <= k <= 4");
    if (height < 0 || height > kMaxUnitEquationHeight)
        throw std::invalid_argument("enumerate_nondegenerate: requires 0 <= H <= 8");
    for (const auto& a : coeffs)
        if (a.is_zero())
            throw std::invalid_argument("enumerate_nondegenerate: coefficients must be nonzero");
    group.validate();
    const double projected = std::pow(group.torsion_order * std::pow(2.0 * height + 1.0, group.rank()), k - 1);
    if (projected > kUnitEquationBudget)
        throw std::invalid_argument("enumerate_nondegenerate: enumeration budget exceeded");

    const auto elems = group_elements(group, height);
    std::unordered_map<CycloNumber, std::size_t, CycloNumberHash> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
        index.emplace(elems[i], i);
    const CycloNumber last_inv = coeffs.back().inverse();

    NondegenerateSolutions out;
    out.group_elements = elems.size();
    std::vector<std::size_t> slot(static_cast<std::size_t>(k - 1), 0);
    std::vector<CycloNumber> z(static_cast<std::size_t>(k));
    for (;;) {
        CycloNumber partial;
        for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(k); ++j) {
            z[j] = elems[slot[j]];
            partial += coeffs[j] * z[j];
        }
        const CycloNumber last = (CycloNumber(1) - partial) * last_inv;
        if (index.count(last)) {
            z.back() = last;
            if (is_nondegenerate(coeffs, z)) {
                ++out.count;
                out.solutions.push_back(z);
            }
        }
        std::size_t pos = 0;
        while (pos < slot.size() && ++slot[pos] == elems.size())
            slot[pos++] = 0;
        if (pos == slot.size())
            break;
    }
    return out;
}

} // namespace udist
