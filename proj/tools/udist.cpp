// udist: command-line front end for the unit-distance verification toolkit.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage or
// precondition error.

#include "udist/bounds.hpp"
#include "udist/config.hpp"
#include "udist/gaussian.hpp"
#include "udist/numtheory.hpp"
#include "udist/paths.hpp"
#include "udist/report.hpp"
#include "udist/udgraph.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::int64_t n = 100;
    std::int64_t m = 0;
    int k = 2;
    int k_max = 3;
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> step_budget;
    std::string emit;
    std::string points;
    bool peeled = false;

    // chebyshev
    std::int64_t x = 100;
    std::int64_t d = 4;
    std::int64_t a = 1;
    std::string kind = "all";

    // bounds
    std::optional<double> log_n;
    std::optional<int> r;
    double c2 = 1.0;
    std::optional<double> epsilon;
};

std::uint64_t resolve_step_budget(const Options& opt) {
    if (opt.step_budget)
        return *opt.step_budget;
    if (const char* env = std::getenv("UDL_STEP_BUDGET")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used != std::string(env).size())
                throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("UDL_STEP_BUDGET is not a nonnegative integer: ") + env);
        }
    }
    return udist::kDefaultStepBudget;
}

std::ofstream open_emit(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot open '" + path + "' for writing");
    return out;
}

void require_budget(std::uint64_t projected, std::uint64_t budget) {
    if (projected > budget)
        throw UsageError("projected " + std::to_string(projected) + " DFS steps exceed the step budget of " +
                         std::to_string(budget) + " (raise --step-budget or UDL_STEP_BUDGET)");
}

udist::UnitDistanceGraph graph_from_options(const Options& opt, std::optional<udist::ConfigParams>& params) {
    if (!opt.points.empty()) {
        if (opt.m < 1)
            throw UsageError("--points requires --m");
        std::ifstream in(opt.points);
        if (!in)
            throw UsageError("cannot read '" + opt.points + "'");
        return udist::build_graph(udist::read_points(in), opt.m, opt.workers);
    }
    params = udist::choose_params(opt.n);
    const std::int64_t m = opt.m > 0 ? opt.m : params->m;
    return udist::build_graph(udist::build_config(*params), m, opt.workers);
}

int run_config(const Options& opt) {
    const auto params = udist::choose_params(opt.n);
    std::cout << udist::to_json(params).dump(2) << '\n';
    if (!opt.emit.empty()) {
        auto out = open_emit(opt.emit);
        udist::write_points(out, udist::build_config(params));
    }
    return kExitOk;
}

int run_graph(const Options& opt) {
    std::optional<udist::ConfigParams> params;
    const auto g = graph_from_options(opt, params);
    nlohmann::ordered_json j;
    if (params)
        j["params"] = udist::to_json(*params);
    j["m"] = g.m();
    j["degree_summary"] = udist::to_json(udist::degree_summary(g));
    std::cout << j.dump(2) << '\n';
    if (!opt.emit.empty()) {
        auto out = open_emit(opt.emit);
        udist::write_edges(out, g);
    }
    return kExitOk;
}

int run_paths(const Options& opt) {
    std::optional<udist::ConfigParams> params;
    auto g = graph_from_options(opt, params);
    if (opt.peeled)
        g = udist::peel(g);
    const auto budget_limit = resolve_step_budget(opt);
    const auto directions = udist::lattice_vectors_of_norm(g.m()).size();
    require_budget(udist::estimate_dfs_steps(g.vertex_count(), directions, opt.k), budget_limit);
    udist::StepBudget budget(budget_limit);

    const auto summary = udist::max_pair_count(g, opt.k, opt.workers, &budget);
    const auto delta = udist::degree_summary(g).min_degree;
    nlohmann::ordered_json j;
    j["k"] = opt.k;
    j["m"] = g.m();
    j["vertex_count"] = g.vertex_count();
    j["min_degree"] = delta;
    j["lower_bound_per_vertex"] = udist::to_json(udist::path_count_lower_bound(static_cast<std::int64_t>(delta), opt.k));
    j["total_paths"] = udist::to_json(summary.total);
    if (summary.found) {
        const auto v = g.point(summary.best.v);
        const auto w = g.point(summary.best.w);
        j["max_pair"] = {{"v", {v.a, v.b}}, {"w", {w.a, w.b}}, {"count", udist::to_json(summary.best.count)}};
    } else {
        j["max_pair"] = nullptr;
    }
    std::cout << j.dump(2) << '\n';
    if (!opt.emit.empty()) {
        udist::StepBudget again(budget_limit);
        const auto pairs = udist::all_pair_counts(g, opt.k, opt.workers, &again);
        auto out = open_emit(opt.emit);
        udist::write_pair_counts(out, g, pairs);
    }
    return kExitOk;
}

int run_reps(const Options& opt) {
    const auto primes = udist::split_prime_factors(opt.m);
    if (!primes)
        throw UsageError("--m must be a product of distinct primes = 1 mod 4 (or 1)");
    for (auto p : udist::representations(*primes))
        std::cout << p.a << ' ' << p.b << '\n';
    return kExitOk;
}

int run_chebyshev(const Options& opt) {
    const udist::APClass cls(opt.d, opt.a);
    const udist::PrimeTable table(opt.x);
    nlohmann::ordered_json j;
    j["x"] = opt.x;
    j["d"] = opt.d;
    j["a"] = opt.a;
    for (const char* name : {"pi", "theta", "psi"}) {
        if (opt.kind != "all" && opt.kind != name)
            continue;
        j[name] = udist::chebyshev(table, udist::parse_chebyshev_kind(name), opt.x, cls);
    }
    if (opt.kind != "all" && !j.contains(opt.kind))
        throw UsageError("--kind must be pi, theta, psi or all");
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int run_bounds(const Options& opt) {
    double log_n = 0.0;
    int r = 0;
    if (opt.log_n) {
        log_n = *opt.log_n;
        if (!opt.r)
            throw UsageError("--log-n requires --r");
    } else {
        log_n = std::log(static_cast<double>(opt.n));
        r = udist::choose_params(opt.n).r - 1;
    }
    if (opt.r)
        r = *opt.r;
    std::vector<udist::BoundRow> rows;
    for (int k = 2; k <= opt.k_max; ++k)
        rows.push_back(udist::bound_row(k, r, log_n, opt.c2, opt.epsilon.value_or(-1.0)));
    if (!opt.emit.empty()) {
        auto out = open_emit(opt.emit);
        udist::write_bound_csv(out, rows);
    }
    udist::write_bound_csv(std::cout, rows);
    return kExitOk;
}

int run_verify(const Options& opt) {
    udist::VerifyOptions vo;
    vo.n = opt.n;
    vo.k_max = opt.k_max;
    vo.workers = opt.workers;
    vo.seed = opt.seed;
    vo.step_budget = resolve_step_budget(opt);
    if (vo.n < 4)
        throw UsageError("--n must be at least 4");
    if (vo.k_max < 1 || vo.k_max > udist::kMaxVerifyK)
        throw UsageError("--k-max must be in [1, 6]");
    require_budget(udist::projected_verify_steps(vo), vo.step_budget);
    const auto report = udist::verify_all(vo);
    const auto text = udist::to_json(report).dump(2);
    std::cout << text << '\n';
    if (!opt.emit.empty()) {
        auto out = open_emit(opt.emit);
        out << text << '\n';
    }
    return report.all_pass() ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unit-distance configuration and bound verification toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_workers = [&](CLI::App* sub) {
        sub->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--step-budget", opt.step_budget, "Maximum DFS steps (overrides UDL_STEP_BUDGET)");
    };

    auto* config = app.add_subcommand("config", "Choose (r, m) for n and print the parameters");
    config->add_option("--n", opt.n, "Point budget")->required();
    config->add_option("--emit", opt.emit, "Write grid points (`x y` per line)");

    auto* graph = app.add_subcommand("graph", "Build the unit-distance graph");
    auto* graph_n = graph->add_option("--n", opt.n, "Point budget (Erdos grid)");
    auto* graph_points = graph->add_option("--points", opt.points, "Point file, `x y` per line");
    graph_n->excludes(graph_points);
    graph->add_option("--m", opt.m, "Target squared distance (defaults to the configuration's m)");
    graph->add_option("--emit", opt.emit, "Write the sorted edge list");
    add_workers(graph);

    auto* paths = app.add_subcommand("paths", "Count irredundant k-edge paths");
    auto* paths_n = paths->add_option("--n", opt.n, "Point budget (Erdos grid)");
    auto* paths_points = paths->add_option("--points", opt.points, "Point file, `x y` per line");
    paths_n->excludes(paths_points);
    paths->add_option("--m", opt.m, "Target squared distance");
    paths->add_option("--k", opt.k, "Path length")->check(CLI::Range(1, udist::kMaxPathLength));
    paths->add_flag("--peel", opt.peeled, "Count on the min-degree subgraph H");
    paths->add_option("--emit", opt.emit, "Write per-pair counts `x_v y_v x_w y_w count`");
    add_workers(paths);
    add_budget(paths);

    auto* reps = app.add_subcommand("reps", "List all (x, y) with x^2 + y^2 = m");
    reps->add_option("--m", opt.m, "Squarefree product of primes = 1 mod 4")->required();

    auto* cheb = app.add_subcommand("chebyshev", "pi, theta, psi in a residue class");
    cheb->add_option("--x", opt.x, "Upper limit")->required()->check(CLI::NonNegativeNumber);
    cheb->add_option("--d", opt.d, "Modulus");
    cheb->add_option("--a", opt.a, "Residue");
    cheb->add_option("--kind", opt.kind, "pi, theta, psi or all");

    auto* bounds = app.add_subcommand("bounds", "CSV rows of log2 A(k, r), epsilon bound and k window");
    bounds->add_option("--n", opt.n, "Point count (r defaults to the configuration rank r - 1)");
    bounds->add_option("--log-n", opt.log_n, "Natural log of n, for n beyond double range");
    bounds->add_option("--r", opt.r, "Group rank")->check(CLI::NonNegativeNumber);
    bounds->add_option("--k-max", opt.k_max, "Largest k (rows for k = 2..k-max)")->check(CLI::Range(2, 64));
    bounds->add_option("--c2", opt.c2, "Optimization constant c2")->check(CLI::PositiveNumber);
    bounds->add_option("--epsilon", opt.epsilon, "Exponent for the feasibility flag")->check(CLI::PositiveNumber);
    bounds->add_option("--emit", opt.emit, "Also write the CSV to a file");

    auto* verify = app.add_subcommand("verify", "Run every check for one configuration size");
    verify->add_option("--n", opt.n, "Point budget")->required();
    verify->add_option("--k-max", opt.k_max, "Largest path length");
    verify->add_option("--seed", opt.seed, "Seed for sampled start vertices");
    verify->add_option("--emit", opt.emit, "Also write the report to a file");
    add_workers(verify);
    add_budget(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (*config)
            return run_config(opt);
        if (*graph)
            return run_graph(opt);
        if (*paths)
            return run_paths(opt);
        if (*reps)
            return run_reps(opt);
        if (*cheb)
            return run_chebyshev(opt);
        if (*bounds)
            return run_bounds(opt);
        if (*verify)
            return run_verify(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const udist::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}
