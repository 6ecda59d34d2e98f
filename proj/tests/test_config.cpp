#include "udist/config.hpp"
#include "udist/udgraph.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace udist;

TEST(ChooseParams, Examples) {
    const auto p100 = choose_params(100);
    EXPECT_EQ(p100.r, 2);
    EXPECT_EQ(p100.m, 5);
    EXPECT_EQ(p100.primes, std::vector<std::int64_t>{5});
    EXPECT_EQ(p100.side, 10);

    const auto p1e6 = choose_params(1'000'000);
    EXPECT_EQ(p1e6.r, 5);
    EXPECT_EQ(p1e6.m, 32045);
    EXPECT_EQ(p1e6.primes, (std::vector<std::int64_t>{5, 13, 17, 29}));

    const auto p10 = choose_params(10);
    EXPECT_EQ(p10.r, 1);
    EXPECT_EQ(p10.m, 1);
    EXPECT_EQ(p10.side, 3);

    EXPECT_THROW(choose_params(3), std::invalid_argument);
}

TEST(ChooseParams, SandwichHoldsAcrossRange) {
    const APClass c41(4, 1);
    for (std::int64_t n = 4; n <= 200'000; n = n * 3 / 2 + 1) {
        const auto p = choose_params(n);
        std::int64_t m = 1;
        for (auto q : p.primes)
            m *= q;
        ASSERT_EQ(m, p.m);
        ASSERT_LE(4 * p.m, n);
        ASSERT_LT(n, 4 * p.m * kth_prime_in_ap(p.r, c41)) << n;
        ASSERT_EQ(p.side * p.side <= n && (p.side + 1) * (p.side + 1) > n, true);
    }
    EXPECT_EQ(choose_params(19).r, 1);
    EXPECT_EQ(choose_params(20).r, 2);
}

TEST(BuildConfig, GridPoints) {
    ConfigParams p;
    p.side = 2;
    EXPECT_EQ(build_config(p), (PointSet{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    EXPECT_EQ(build_config(choose_params(100)).size(), 100u);
    const auto small = choose_params(10);
    EXPECT_EQ(build_graph(build_config(small), small.m).edge_count(), oracle::unit_pairs(oracle::grid(3), 1).size());
    EXPECT_EQ(oracle::unit_pairs(oracle::grid(3), 1).size(), 12u);
}

TEST(Generators, Examples) {
    const auto g2 = generators(choose_params(100));
    ASSERT_EQ(g2.pairs.size(), 1u);
    EXPECT_EQ(g2.pairs[0].first, (GaussInt{1, 2}));
    EXPECT_EQ(g2.pairs[0].second, (GaussInt{1, -2}));
    EXPECT_EQ(g2.scale_exponent, (RationalExponent{-1, 2}));

    const auto g3 = generators(choose_params(400));
    ASSERT_EQ(g3.pairs.size(), 2u);
    EXPECT_EQ(g3.pairs[1].first, (GaussInt{2, 3}));
    EXPECT_EQ(g3.pairs[1].second, (GaussInt{2, -3}));
    EXPECT_EQ(g3.generator_count(), 4u);
    EXPECT_EQ(g3.rank_bound(), 2u);
    EXPECT_EQ(g3.scale_exponent, (RationalExponent{-1, 4}));

    EXPECT_THROW(generators(choose_params(10)), std::invalid_argument);
}

TEST(Generators, ConjugatePairsMultiplyToThePrime) {
    const auto params = choose_params(10'000'000);
    const auto gens = generators(params);
    for (std::size_t j = 0; j < gens.pairs.size(); ++j)
        EXPECT_EQ(gmul(gens.pairs[j].first, gens.pairs[j].second), (GaussInt{params.primes[j], 0}));
}

TEST(VerifyEdgeInGroup, Examples) {
    const auto g65 = generators(choose_params(400));
    const auto s = verify_edge_in_group({-4, 7}, g65);
    EXPECT_EQ(s.signs, (std::vector<int>{1, 1}));
    EXPECT_EQ(s.unit, Unit(0));

    const auto g5 = generators(choose_params(100));
    const auto t = verify_edge_in_group({1, 2}, g5);
    EXPECT_EQ(t.signs, std::vector<int>{1});
    EXPECT_EQ(t.unit, Unit(0));

    // (2,-1) = (0,-1)(1,2); exactly one of the 2 * 4 (sign, unit) candidates reproduces it.
    const auto u = verify_edge_in_group({2, -1}, g5);
    EXPECT_EQ(u.signs, std::vector<int>{1});
    EXPECT_EQ(u.unit.value(), (GaussInt{0, -1}));
    int matches = 0;
    for (GaussInt atom : {GaussInt{1, 2}, GaussInt{1, -2}})
        for (Unit e : Unit::all())
            matches += gmul(e.value(), atom) == GaussInt{2, -1} ? 1 : 0;
    EXPECT_EQ(matches, 1);

    EXPECT_THROW(verify_edge_in_group({1, 1}, g5), std::invalid_argument);
}

TEST(VerifyEdgeInGroup, EveryRepresentationFactorsForRUpToFive) {
    for (std::int64_t n : {100, 400, 5000, 200'000}) {
        const auto params = choose_params(n);
        const auto gens = generators(params);
        for (GaussInt v : representations(params.primes)) {
            const auto sel = verify_edge_in_group(v, gens);
            GaussInt rebuilt = sel.unit.value();
            for (std::size_t j = 0; j < sel.signs.size(); ++j)
                rebuilt = gmul(rebuilt, sel.signs[j] > 0 ? gens.pairs[j].first : gens.pairs[j].second);
            ASSERT_EQ(rebuilt, v);
        }
    }
}

TEST(RankBounds, Examples) {
    const auto w6 = rank_bounds(1e6);
    EXPECT_NEAR(w6.low, std::log(1e6) / (3 * std::log(std::log(1e6))), 1e-12);
    EXPECT_NEAR(w6.low, 1.754, 1e-3);
    EXPECT_NEAR(w6.high, 84.18, 1e-2);
    const auto w2 = rank_bounds(100);
    EXPECT_NEAR(w2.low, 1.005, 1e-3);
    EXPECT_NEAR(w2.high, 48.25, 1e-2);
    EXPECT_THROW(rank_bounds(std::exp(std::exp(1.0))), std::invalid_argument);
    EXPECT_THROW(rank_bounds(10.0), std::invalid_argument);
    EXPECT_NO_THROW(rank_bounds(16.0));
    EXPECT_THROW(rank_bounds(15.0), std::invalid_argument);
    EXPECT_THROW(rank_bounds(1.0), std::invalid_argument);
}

TEST(RankBounds, ChosenRankLiesInWindowAndThetaBound) {
    const APClass c41(4, 1);
    for (std::int64_t n : {100, 1000, 10'000, 100'000, 1'000'000, 10'000'000}) {
        const auto p = choose_params(n);
        const auto w = rank_bounds(static_cast<double>(n));
        EXPECT_LE(w.low, p.r) << n;
        EXPECT_LE(p.r, w.high) << n;
        const double theta = chebyshev(ChebyshevKind::theta, p.primes.back(), c41);
        EXPECT_LE(theta, std::log(static_cast<double>(n) / 4.0)) << n;
    }
}

TEST(PointFiles, WriteReadAndReject) {
    const PointSet pts{{0, 0}, {-3, 7}, {12, -1}};
    std::stringstream ss;
    write_points(ss, pts);
    EXPECT_EQ(ss.str(), "0 0\n-3 7\n12 -1\n");
    EXPECT_EQ(read_points(ss), pts);
    std::istringstream bad("1 2\n3\n");
    EXPECT_THROW(read_points(bad), std::invalid_argument);
    std::istringstream extra("1 2 3\n");
    EXPECT_THROW(read_points(extra), std::invalid_argument);
}

TEST(ParamsJson, Fields) {
    const auto j = to_json(choose_params(400));
    EXPECT_EQ(j.dump(), R"({"n":400,"r":3,"m":65,"primes":[5,13],"side":20})");
}
