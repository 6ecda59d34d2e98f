#include "udist/report.hpp"

#include <gtest/gtest.h>

using namespace udist;

TEST(VerifyAll, HundredPointsAllChecksPass) {
    VerifyOptions opt;
    opt.n = 100;
    opt.k_max = 3;
    const auto rep = verify_all(opt);
    EXPECT_EQ(rep.edge_count, 288u);
    EXPECT_EQ(rep.params.r, 2);
    EXPECT_TRUE(rep.all_pass());
    ASSERT_EQ(rep.path_stats.size(), 3u);
    std::vector<std::string> names;
    for (const auto& c : rep.bound_checks) {
        names.push_back(c.name);
        EXPECT_TRUE(c.pass) << c.name << ' ' << c.lhs << ' ' << c.relation << ' ' << c.rhs;
    }
    for (const char* want : {"config.sandwich_lower", "config.sandwich_upper", "config.theta_4_1_le_log_n_over_4",
                             "rank.lower", "rank.upper", "reps.count_eq_2^(t+2)", "group.directions_factored",
                             "edges.lower_n_2^(r-1)/16", "edges.upper_2^(r+3)n", "degree.max_le_2^(r+3)",
                             "peel.min_degree_ge_threshold", "paths.k3.log2_max_pair_le_log2_A"})
        EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}

TEST(VerifyAll, DegenerateSmallN) {
    VerifyOptions opt;
    opt.n = 10;
    opt.k_max = 1;
    const auto rep = verify_all(opt);
    EXPECT_EQ(rep.params.m, 1);
    EXPECT_EQ(rep.edge_count, 12u);
    EXPECT_TRUE(rep.all_pass());
    for (const auto& c : rep.bound_checks)
        EXPECT_NE(c.name.rfind("group.", 0), 0u) << c.name;
}

TEST(VerifyAll, RejectsBadArguments) {
    VerifyOptions opt;
    opt.n = 3;
    EXPECT_THROW(verify_all(opt), std::invalid_argument);
    opt.n = 100;
    opt.k_max = 7;
    EXPECT_THROW(verify_all(opt), std::invalid_argument);
    opt.k_max = 3;
    opt.step_budget = 10;
    EXPECT_THROW(verify_all(opt), BudgetExceeded);
}

TEST(VerifyAll, JsonIndependentOfWorkerCount) {
    VerifyOptions opt;
    opt.n = 400;
    opt.k_max = 3;
    const auto one = to_json(verify_all(opt)).dump(2);
    opt.workers = 4;
    EXPECT_EQ(to_json(verify_all(opt)).dump(2), one);
    opt.seed = 1;
    opt.sampled_starts = 10;
    const auto other = to_json(verify_all(opt));
    EXPECT_TRUE(other["all_pass"].get<bool>());
}

TEST(SampleVertices, DeterministicSortedAndDistinct) {
    const auto a = detail::sample_vertices(1000, 50, 3);
    EXPECT_EQ(a, detail::sample_vertices(1000, 50, 3));
    EXPECT_EQ(a.size(), 50u);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
    EXPECT_EQ(detail::sample_vertices(7, 50, 0).size(), 7u);
}
