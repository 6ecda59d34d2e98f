#include "udist/bounds.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace udist;

TEST(Log2A, Examples) {
    EXPECT_DOUBLE_EQ(log2_A(1, 0), 24.0);
    EXPECT_DOUBLE_EQ(log2_A(2, 0), 768.0);
    EXPECT_DOUBLE_EQ(log2_A(2, 1), 1280.0);
    EXPECT_THROW(log2_A(0, 0), std::invalid_argument);
    EXPECT_THROW(log2_A(1, -1), std::invalid_argument);
}

TEST(EpsilonRhs, Examples) {
    EXPECT_NEAR(epsilon_rhs(2, 1, 100.0), 80.0 * std::log(2.0) / 100.0 + 0.75, 1e-12);
    EXPECT_NEAR(epsilon_rhs(2, 1, 100.0), 1.3045, 1e-4);
    EXPECT_DOUBLE_EQ(epsilon_rhs(2, 0, 7.0), 0.75);
    EXPECT_NEAR(epsilon_rhs(10, 2, 1000.0), 1e5 * std::log(10.0) / 1000.0 + 0.15, 1e-9);
    EXPECT_THROW(epsilon_rhs(1, 1, 100.0), std::invalid_argument);
    EXPECT_THROW(epsilon_rhs(2, 1, 1.0), std::invalid_argument);
}

TEST(LambertW, Examples) {
    EXPECT_EQ(lambert_w(0.0), 0.0);
    EXPECT_NEAR(lambert_w(std::exp(1.0)), 1.0, 1e-12);
    EXPECT_NEAR(lambert_w(10.0), oracle::lambert_w_bisect(10.0), 1e-12);
    EXPECT_NEAR(lambert_w(10.0), 1.74553, 1e-5);
    EXPECT_THROW(lambert_w(-1.0), std::invalid_argument);
}

TEST(LambertW, ResidualAndOracleAtRandomPoints) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> exponent(-3.0, 12.0);
    for (int i = 0; i < 100; ++i) {
        const double x = std::pow(10.0, exponent(rng));
        const double w = lambert_w(x);
        EXPECT_LE(std::abs(w * std::exp(w) - x), 1e-12 * std::max(x, 1.0)) << x;
        EXPECT_NEAR(w, oracle::lambert_w_bisect(x), 1e-10) << x;
    }
}

TEST(LambertW, LogBracketAboveE) {
    for (double lx = 1.0; lx <= std::log(1e12); lx += 0.05) {
        const double x = std::exp(lx);
        const double w = lambert_w(x);
        EXPECT_LE(0.5 * std::log(x), w + 1e-12) << x;
        EXPECT_LE(w, std::log(x) + 1e-12) << x;
    }
}

TEST(OptimalKWindow, Examples) {
    const double log_n = 5.0 * std::exp(5.0);
    const double arg = 5.0 * log_n;
    const double w = lambert_w(arg);
    EXPECT_LE(0.5 * std::log(arg), w);
    EXPECT_LE(w, std::log(arg));
    EXPECT_NEAR(optimal_k_window(log_n, 1).k_star, std::exp(w / 5.0), 1e-12);

    const auto win = optimal_k_window(100.0, 1, 1.0);
    EXPECT_NEAR(lambert_w(500.0), oracle::lambert_w_bisect(500.0), 1e-12);
    EXPECT_NEAR(lambert_w(500.0), 4.67284, 1e-5);
    EXPECT_NEAR(win.k_star, 2.54611, 1e-5);
    EXPECT_TRUE(win.contained);
    EXPECT_LE(win.k_lo, win.k_star);
    EXPECT_LE(win.k_star, win.k_hi);

    EXPECT_TRUE(k_feasible(2, 0.5, 100.0));   // 0.5 * 100 / log 2 - 1 = 71.1
    EXPECT_FALSE(k_feasible(72, 0.5, 100.0));
    EXPECT_THROW(optimal_k_window(100.0, 0), std::invalid_argument);
}

TEST(OptimalKWindow, CalibratedConstantsBracketTheMinimizerOnTheGrid) {
    const auto& c = default_k_window_constants();
    EXPECT_GT(c.c_lo, 0.0);
    EXPECT_LE(c.c_lo, c.c_hi);
    for (double ln : {10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0}) {
        for (int r : {1, 2, 3, 5, 8}) {
            const auto win = optimal_k_window(ln, r);
            EXPECT_TRUE(win.contained) << ln << ' ' << r;
            const int kmin = argmin_epsilon_k(r, ln);
            EXPECT_LE(win.k_lo, kmin + 1e-12);
            EXPECT_LE(kmin, win.k_hi + 1e-12);
        }
    }
}

TEST(ArgminEpsilon, AgreesWithScan) {
    for (double ln : {50.0, 400.0, 3000.0}) {
        for (int r : {1, 4}) {
            const int k = argmin_epsilon_k(r, ln);
            for (int j = 2; j <= 64; ++j)
                EXPECT_LE(epsilon_rhs(k, r, ln), epsilon_rhs(j, r, ln));
        }
    }
}

TEST(AbsorptionCheck, FailsForSmallKAndHoldsForLarge) {
    EXPECT_FALSE(absorption_check(2, 1).holds);
    EXPECT_FALSE(absorption_check(5, 0).holds);
    const auto big = absorption_check(100000, 1000);
    EXPECT_TRUE(big.holds) << big.lhs << " vs " << big.rhs;
}

TEST(LargestRankConstant, MatchesDirectInequality) {
    const double eps = 0.9;
    const double log_n = 1000.0;
    const auto rc = largest_rank_constant(eps, log_n);
    ASSERT_GT(rc.k, 0);
    // At slightly smaller rank the bound dips below eps, at slightly larger it does not for any feasible k.
    const double r_max = rc.c * log_n;
    const double lower_r = r_max * 0.999;
    const double kd = rc.k;
    EXPECT_LT(5.0 * lower_r * std::pow(kd, 4) * std::log(kd) / log_n + 1.5 / kd, eps);
    for (int k = 2; k <= 64 && k_feasible(k, eps, log_n); ++k) {
        const double v = 5.0 * r_max * 1.001 * std::pow(k, 4) * std::log(static_cast<double>(k)) / log_n + 1.5 / k;
        EXPECT_GE(v, eps) << k;
    }
    EXPECT_EQ(largest_rank_constant(0.5, 1.0).k, 0);
}

TEST(BoundRow, CsvFormat) {
    std::ostringstream os;
    write_bound_csv(os, {bound_row(2, 1, 100.0)});
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "k,r,n,log2_A,epsilon_rhs,k_star,feasible_k_flag");
    const auto row = bound_row(2, 0, 100.0);
    EXPECT_TRUE(std::isnan(row.k_star));
    EXPECT_DOUBLE_EQ(row.log2_a, 768.0);
}

// ---------------------------------------------------------------------------

namespace {

GroupSpec minus_one_times_two() {
    GroupSpec g;
    g.torsion_order = 2;
    g.free_generators = {CycloNumber(2)};
    return g;
}

} // namespace

TEST(Rational, Arithmetic) {
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(1, -3), Rational(-1, 3));
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(1, 2) * Rational(2, 3), Rational(1, 3));
    EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(std::numeric_limits<std::int64_t>::max()) * Rational(4), std::overflow_error);
}

TEST(CycloNumber, FieldIdentities) {
    const auto zeta = CycloNumber::zeta_power(1);
    EXPECT_EQ(zeta.pow(12), CycloNumber(1));
    EXPECT_EQ(zeta.pow(6), CycloNumber(-1));
    EXPECT_EQ(zeta.pow(3), CycloNumber::gaussian(0, 1));
    EXPECT_EQ(zeta.pow(4) - zeta.pow(2) + CycloNumber(1), CycloNumber());
    for (int j = 0; j < 12; ++j)
        EXPECT_EQ(CycloNumber::zeta_power(j), zeta.pow(j)) << j;
    const auto third = CycloNumber::zeta_power(4);
    EXPECT_EQ(CycloNumber(1) + third + third * third, CycloNumber()); // 1 + w + w^2 = 0
    const auto g = CycloNumber::gaussian(Rational(3, 5), Rational(-4, 7));
    EXPECT_EQ(g * g.inverse(), CycloNumber(1));
    const auto mixed = CycloNumber(2) + zeta * CycloNumber(Rational(1, 3));
    EXPECT_EQ(mixed * mixed.inverse(), CycloNumber(1));
    EXPECT_EQ(CycloNumber::gaussian(1, 2) * CycloNumber::gaussian(2, 3), CycloNumber::gaussian(-4, 7));
}

TEST(EnumerateNondegenerate, Examples) {
    const std::vector<CycloNumber> ones{CycloNumber(1), CycloNumber(1)};
    const auto res = enumerate_nondegenerate(ones, minus_one_times_two(), 2);
    EXPECT_EQ(res.count, 3u);
    EXPECT_EQ(res.group_elements, 10u);
    std::vector<std::pair<CycloNumber, CycloNumber>> got;
    for (const auto& s : res.solutions) {
        got.emplace_back(s[0], s[1]);
        EXPECT_TRUE(is_nondegenerate(ones, s));
        EXPECT_EQ(s[0] + s[1], CycloNumber(1));
    }
    std::sort(got.begin(), got.end());
    std::vector<std::pair<CycloNumber, CycloNumber>> want{{CycloNumber(Rational(1, 2)), CycloNumber(Rational(1, 2))},
                                                          {CycloNumber(2), CycloNumber(-1)},
                                                          {CycloNumber(-1), CycloNumber(2)}};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
    EXPECT_LE(std::log2(static_cast<double>(res.count)), log2_A(2, 1));

    GroupSpec roots;
    roots.torsion_order = 4;
    EXPECT_EQ(enumerate_nondegenerate(ones, roots, 2).count, 0u);
}

TEST(EnumerateNondegenerate, SixthRootsOfUnityAreExact) {
    // z1 + z2 = 1 with z in mu_6: exactly (zeta_6, zeta_6^-1) and its swap.
    GroupSpec mu6;
    mu6.torsion_order = 6;
    const auto res = enumerate_nondegenerate({CycloNumber(1), CycloNumber(1)}, mu6, 0);
    EXPECT_EQ(res.count, 2u);
    // z1 + z2 + z3 = 1 over mu_6: brute-force all 216 triples independently.
    std::size_t brute = 0;
    std::vector<CycloNumber> mu;
    for (int j = 0; j < 12; j += 2)
        mu.push_back(CycloNumber::zeta_power(j));
    const std::vector<CycloNumber> ones{CycloNumber(1), CycloNumber(1), CycloNumber(1)};
    for (auto& a : mu)
        for (auto& b : mu)
            for (auto& c : mu)
                if (a + b + c == CycloNumber(1) && is_nondegenerate(ones, {a, b, c}))
                    ++brute;
    EXPECT_EQ(enumerate_nondegenerate(ones, mu6, 0).count, brute);
}

TEST(EnumerateNondegenerate, SymmetricUnderSlotPermutationAndGeneratorInversion) {
    GroupSpec g;
    g.torsion_order = 4;
    g.free_generators = {CycloNumber::gaussian(1, 1), CycloNumber(3)};
    const std::vector<CycloNumber> a{CycloNumber(1), CycloNumber::gaussian(0, 1), CycloNumber(Rational(1, 2))};
    const auto base = enumerate_nondegenerate(a, g, 2);
    EXPECT_GT(base.count, 0u);
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        std::vector<CycloNumber> pa;
        for (auto i : perm)
            pa.push_back(a[i]);
        EXPECT_EQ(enumerate_nondegenerate(pa, g, 2).count, base.count);
    } while (std::next_permutation(perm.begin(), perm.end()));
    GroupSpec inv = g;
    for (auto& gen : inv.free_generators)
        gen = gen.inverse();
    EXPECT_EQ(enumerate_nondegenerate(a, inv, 2).count, base.count);
    for (const auto& s : base.solutions) {
        EXPECT_TRUE(is_nondegenerate(a, s));
        CycloNumber sum;
        for (std::size_t j = 0; j < a.size(); ++j)
            sum += a[j] * s[j];
        EXPECT_EQ(sum, CycloNumber(1));
    }
    EXPECT_LE(std::log2(static_cast<double>(base.count)), log2_A(3, g.rank()));
}

TEST(EnumerateNondegenerate, RejectsOutOfRangeParameters) {
    const auto g = minus_one_times_two();
    EXPECT_THROW(enumerate_nondegenerate({}, g, 2), std::invalid_argument);
    EXPECT_THROW(enumerate_nondegenerate(std::vector<CycloNumber>(5, CycloNumber(1)), g, 2), std::invalid_argument);
    EXPECT_THROW(enumerate_nondegenerate({CycloNumber(1)}, g, 9), std::invalid_argument);
    GroupSpec wide;
    wide.torsion_order = 12;
    wide.free_generators = {CycloNumber(2), CycloNumber(3), CycloNumber(5)};
    EXPECT_THROW(enumerate_nondegenerate(std::vector<CycloNumber>(4, CycloNumber(1)), wide, 8), std::invalid_argument);
    GroupSpec bad;
    bad.torsion_order = 5;
    EXPECT_THROW(enumerate_nondegenerate({CycloNumber(1)}, bad, 1), std::invalid_argument);
}
