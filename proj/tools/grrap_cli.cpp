// Command-line front end: instance I/O, single evaluations, optimization
// runs, factor screening, feasible-combination counting, and reliability
// cross-checks. Exit codes: 0 success, 1 runtime error, 2 usage error.

#include "CLI11.hpp"

#include "grrap/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw grrap::parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

grrap::Network load_network(const std::string& path) {
    return grrap::parse_network(slurp(path));
}

grrap::ProblemInstance load_instance(const std::string& net_path, const std::string& inst_path) {
    grrap::Network net = load_network(net_path);
    return grrap::parse_instance(slurp(inst_path), net);
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw grrap::parse_error("malformed numeric list: '" + text + "'");
    return out;
}

// wrong arity and similar argument mistakes are usage errors (exit 2)
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

grrap::Solution parse_solution_literal(const std::string& text, int m) {
    auto values = parse_reals(text);
    if (static_cast<int>(values.size()) != 2 * m)
        throw usage_error("solution literal needs " + std::to_string(2 * m) + " values (" +
                          std::to_string(m) + " counts then " + std::to_string(m) +
                          " reliabilities), got " + std::to_string(values.size()));
    grrap::Solution sol;
    for (int i = 0; i < m; ++i) {
        double n = values[i];
        if (n != std::floor(n))
            throw usage_error("count segment entry " + std::to_string(i + 1) +
                              " is not an integer");
        sol.counts.push_back(static_cast<int>(n));
    }
    sol.rels.assign(values.begin() + m, values.end());
    return sol;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

int cmd_eval(const std::string& net_path, const std::string& inst_path,
             const std::string& literal, double gamma) {
    grrap::ProblemInstance inst = load_instance(net_path, inst_path);
    grrap::Solution sol = parse_solution_literal(literal, inst.size());
    grrap::Evaluation ev =
        grrap::evaluate_solution(inst, sol, {gamma, grrap::PenaltyMode::general});
    std::printf("g_c      = %.6f (limit %g)\n", ev.report.cost, inst.cost_limit);
    std::printf("g_v      = %.6f (limit %g)\n", ev.report.volume, inst.volume_limit);
    std::printf("g_w      = %.6f (limit %g)\n", ev.report.weight, inst.weight_limit);
    for (int i = 0; i < inst.size(); ++i)
        std::printf("R_%-2d     = %.10f\n", i + 1,
                    grrap::subsystem_reliability(sol.rels[i], sol.counts[i]));
    std::printf("R_s      = %.10f\n", ev.rs);
    std::printf("feasible = %s\n", ev.report.feasible() ? "yes" : "no");
    if (!ev.report.feasible()) {
        std::string what;
        using V = grrap::Violation;
        for (auto [flag, name] : {std::pair{V::cost, "cost"}, {V::volume, "volume"},
                                  {V::weight, "weight"}, {V::n_bounds, "n-bounds"},
                                  {V::r_bounds, "r-bounds"}})
            if (ev.report.has(flag)) what += std::string(" ") + name;
        std::printf("violated =%s\n", what.c_str());
    }
    std::printf("fitness  = %.10f\n", ev.fitness);
    return 0;
}

int cmd_reliability(const std::string& net_path, const std::string& rels_literal,
                    std::uint64_t samples, std::uint64_t seed) {
    grrap::Network net = load_network(net_path);
    auto rels = parse_reals(rels_literal);
    if (static_cast<int>(rels.size()) != net.node_count)
        throw usage_error("need exactly " + std::to_string(net.node_count) +
                          " node reliabilities");
    grrap::ReliabilityResult exact = grrap::exact_reliability(net, rels);
    std::printf("exact       = %.10f  (%llu of %llu state vectors connected)\n", exact.value,
                static_cast<unsigned long long>(exact.connected_vectors),
                static_cast<unsigned long long>(exact.enumerated_vectors));
    if (net.node_count <= 20) {
        double brute = grrap::brute_force_reliability(net, rels);
        std::printf("brute force = %.10f  (|delta| = %.3e)\n", brute,
                    std::abs(brute - exact.value));
    }
    auto mc = grrap::monte_carlo_reliability(net, rels, samples, seed);
    std::printf("monte carlo = %.10f  (std error %.3e, %llu samples, seed %llu)\n", mc.estimate,
                mc.std_error, static_cast<unsigned long long>(samples),
                static_cast<unsigned long long>(seed));
    return 0;
}

int cmd_comb(const std::string& net_path, const std::string& inst_path,
             const std::string& out_path) {
    grrap::ProblemInstance inst = load_instance(net_path, inst_path);
    grrap::CombSet comb = grrap::enumerate_feasible_counts(inst);
    std::printf("|Comb| = %zu\n", comb.size());
    if (comb.empty()) {
        std::fprintf(stderr,
                     "warning: no count vector satisfies the volume/weight limits; "
                     "the instance is infeasible\n");
        return 1;
    }
    std::size_t vmax = 0, wmax = 0;
    for (std::size_t k = 1; k < comb.size(); ++k) {
        if (comb.volumes[k] > comb.volumes[vmax]) vmax = k;
        if (comb.weights[k] > comb.weights[wmax]) wmax = k;
    }
    std::printf("max volume member uses %.2f%% of V (%.4f of %g)\n",
                100.0 * comb.volumes[vmax] / inst.volume_limit, comb.volumes[vmax],
                inst.volume_limit);
    std::printf("max weight member uses %.2f%% of W (%.4f of %g)\n",
                100.0 * comb.weights[wmax] / inst.weight_limit, comb.weights[wmax],
                inst.weight_limit);
    if (!out_path.empty()) {
        std::string csv = "index,counts,volume,weight\n";
        for (std::size_t k = 0; k < comb.size(); ++k)
            csv += std::to_string(k) + "," + grrap::detail::join_counts(comb.members[k]) + "," +
                   grrap::detail::fixed(comb.volumes[k], 6) + "," +
                   grrap::detail::fixed(comb.weights[k], 6) + "\n";
        write_text(out_path, csv);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_solve(const grrap::ExperimentSpec& spec) {
    grrap::ProblemInstance inst = load_instance(spec.network_path, spec.instance_path);
    std::vector<std::pair<grrap::Algorithm, std::vector<grrap::RunResult>>> blocks;
    for (grrap::Algorithm algo : spec.algorithms) {
        blocks.emplace_back(algo,
                            grrap::run_many(algo, inst, spec.base, spec.runs, 0));
        const auto& runs = blocks.back().second;
        grrap::SummaryStats s = grrap::summarize(runs);
        std::printf("%-5s  F_avg=%.10f  F_max=%.10f  F_min=%.10f  F_stdev=%.10f  T_avg=%.3fs\n",
                    grrap::algorithm_name(algo).c_str(), s.f_avg, s.f_max, s.f_min, s.f_stdev,
                    s.t_avg);
    }
    std::string csv = grrap::solve_csv(blocks);
    if (!spec.output_path.empty()) {
        write_text(spec.output_path, csv);
        std::printf("wrote %s\n", spec.output_path.c_str());
    } else {
        std::fputs(csv.c_str(), stdout);
    }
    return 0;
}

int cmd_factor_screen(const std::string& net_path, const std::string& inst_path,
                      const grrap::SwarmConfig& base, int runs, const std::string& out_path) {
    grrap::ProblemInstance inst = load_instance(net_path, inst_path);
    auto rows = grrap::factor_screen(inst, base, runs, 0);
    for (const auto& r : rows)
        std::printf("combination %d (%s): F_avg=%.10f F_max=%.10f F_min=%.10f F_stdev=%.10f\n",
                    r.combination, grrap::format_factor_mask(r.factors).c_str(), r.stats.f_avg,
                    r.stats.f_max, r.stats.f_min, r.stats.f_stdev);
    std::string csv = grrap::screen_csv(rows);
    if (!out_path.empty()) {
        write_text(out_path, csv);
        std::printf("wrote %s\n", out_path.c_str());
    } else {
        std::fputs(csv.c_str(), stdout);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRRAP solver suite: exact network reliability, feasible-count "
                 "enumeration, and swarm optimizers"};
    app.require_subcommand(1);

    std::string net_path, inst_path, out_path, literal, config_path;
    std::string algo_list = "bsso";
    std::string factors = "1111";
    grrap::SwarmConfig base;
    int runs = 1;
    std::uint64_t samples = 1'000'000, mc_seed = 1;

    auto add_net = [&](CLI::App* cmd) {
        cmd->add_option("--network", net_path, "network file")->required();
    };
    auto add_inst = [&](CLI::App* cmd) {
        cmd->add_option("--instance", inst_path, "instance file")->required();
    };
    auto add_swarm = [&](CLI::App* cmd) {
        cmd->add_option("--nsol", base.nsol, "population size");
        cmd->add_option("--ngen", base.ngen, "generations");
        cmd->add_option("--runs", runs, "independent runs");
        cmd->add_option("--seed", base.seed, "master seed; run r uses seed+r");
        cmd->add_option("--gamma", base.gamma, "penalty exponent");
        cmd->add_option("--cg", base.cg, "gBest threshold");
        cmd->add_option("--cp", base.cp, "pBest threshold");
        cmd->add_option("--cw", base.cw, "keep threshold");
        cmd->add_option("--out", out_path, "CSV output path");
        cmd->add_option("--config", config_path, "key-value run configuration file");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate one solution literal");
    add_net(eval);
    add_inst(eval);
    eval->add_option("--solution", literal, "2m values: counts then reliabilities")->required();
    eval->add_option("--gamma", base.gamma, "penalty exponent");

    CLI::App* rel = app.add_subcommand("reliability",
                                       "exact vs brute-force vs Monte Carlo cross-check");
    add_net(rel);
    rel->add_option("--rels", literal, "m node reliabilities")->required();
    rel->add_option("--samples", samples, "Monte Carlo samples");
    rel->add_option("--seed", mc_seed, "Monte Carlo seed");

    CLI::App* comb = app.add_subcommand("comb", "count feasible component-count vectors");
    add_net(comb);
    add_inst(comb);
    comb->add_option("--out", out_path, "dump members as CSV");

    CLI::App* solve = app.add_subcommand("solve", "run optimizers and emit per-run CSV");
    add_net(solve);
    add_inst(solve);
    add_swarm(solve);
    solve->add_option("--algo", algo_list, "comma-separated list from bsso,sso,ga,pso");
    solve->add_option("--factors", factors, "ABCD factor bitmask for bsso, e.g. 1111");

    CLI::App* screen = app.add_subcommand("factor-screen",
                                          "run all eight factor combinations");
    add_net(screen);
    add_inst(screen);
    add_swarm(screen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            // the config file supplies values for everything the command line
            // left unset; explicit flags always win
            grrap::RunConfigFile file = grrap::parse_run_config(slurp(config_path));
            CLI::App* active = solve->parsed() ? solve : screen;
            auto unset = [&](const std::string& flag) { return active->count(flag) == 0; };
            if (file.nsol && unset("--nsol")) base.nsol = *file.nsol;
            if (file.ngen && unset("--ngen")) base.ngen = *file.ngen;
            if (file.seed && unset("--seed")) base.seed = *file.seed;
            if (file.cg && unset("--cg")) base.cg = *file.cg;
            if (file.cp && unset("--cp")) base.cp = *file.cp;
            if (file.cw && unset("--cw")) base.cw = *file.cw;
            if (file.gamma && unset("--gamma")) base.gamma = *file.gamma;
            if (file.runs && unset("--runs")) runs = *file.runs;
            if (file.factors && (!solve->parsed() || solve->count("--factors") == 0))
                factors = grrap::format_factor_mask(*file.factors);
            if (file.algorithm && (!solve->parsed() || solve->count("--algo") == 0))
                algo_list = grrap::algorithm_name(*file.algorithm);
        }

        if (eval->parsed()) return cmd_eval(net_path, inst_path, literal, base.gamma);
        if (rel->parsed()) return cmd_reliability(net_path, literal, samples, mc_seed);
        if (comb->parsed()) return cmd_comb(net_path, inst_path, out_path);
        if (solve->parsed()) {
            grrap::ExperimentSpec spec;
            spec.network_path = net_path;
            spec.instance_path = inst_path;
            spec.runs = runs;
            spec.base = base;
            spec.base.factors = grrap::parse_factor_mask(factors);
            spec.output_path = out_path;
            std::stringstream ss(algo_list);
            std::string name;
            while (std::getline(ss, name, ','))
                if (!name.empty()) spec.algorithms.push_back(grrap::parse_algorithm(name));
            if (spec.algorithms.empty()) throw usage_error("no algorithm given");
            return cmd_solve(spec);
        }
        if (screen->parsed())
            return cmd_factor_screen(net_path, inst_path, base, runs, out_path);
    } catch (const usage_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
