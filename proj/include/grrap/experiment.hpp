#pragma once

#include "grrap/baselines.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <thread>

namespace grrap {

enum class Algorithm { bsso, sso, ga, pso };

inline std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::bsso: return "bsso";
        case Algorithm::sso: return "sso";
        case Algorithm::ga: return "ga";
        case Algorithm::pso: return "pso";
    }
    return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
    if (name == "bsso") return Algorithm::bsso;
    if (name == "sso") return Algorithm::sso;
    if (name == "ga") return Algorithm::ga;
    if (name == "pso") return Algorithm::pso;
    throw validation_error("unknown algorithm '" + name + "' (expected bsso|sso|ga|pso)");
}

struct ExperimentSpec {
    std::string network_path;
    std::string instance_path;
    std::vector<Algorithm> algorithms;
    int runs = 1;
    SwarmConfig base;  // base.seed is the master seed; run r uses seed+r
    std::string output_path;
};

struct SummaryStats {
    double f_avg = 0.0;
    double f_max = 0.0;
    double f_min = 0.0;
    double f_stdev = 0.0;  // sample standard deviation, n-1 denominator
    double t_avg = 0.0;
};

inline SummaryStats summarize(const std::vector<RunResult>& runs) {
    SummaryStats s;
    if (runs.empty()) return s;
    s.f_max = s.f_min = runs[0].best_fitness;
    double sum = 0.0, tsum = 0.0;
    for (const auto& r : runs) {
        sum += r.best_fitness;
        tsum += r.wall_seconds;
        s.f_max = std::max(s.f_max, r.best_fitness);
        s.f_min = std::min(s.f_min, r.best_fitness);
    }
    s.f_avg = sum / runs.size();
    s.t_avg = tsum / runs.size();
    if (runs.size() > 1) {
        double ss = 0.0;
        for (const auto& r : runs) {
            double d = r.best_fitness - s.f_avg;
            ss += d * d;
        }
        s.f_stdev = std::sqrt(ss / (runs.size() - 1));
    }
    return s;
}

inline RunResult run_algorithm(Algorithm algo, const ProblemInstance& inst,
                               const SwarmConfig& cfg, const CombSet* comb = nullptr) {
    switch (algo) {
        case Algorithm::bsso: return bsso_run(inst, cfg, comb);
        case Algorithm::sso: return sso_run(inst, cfg);
        case Algorithm::ga: return ga_run(inst, cfg);
        case Algorithm::pso: return pso_run(inst, cfg);
    }
    throw validation_error("unreachable algorithm");
}

// Parallelism cap: GRRAP_THREADS when set, hardware concurrency otherwise.
inline int thread_budget() {
    if (const char* env = std::getenv("GRRAP_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Independent seeded runs; run r gets seed base.seed + r. Runs may execute on
// several threads, results land in run-index order and are identical to a
// serial execution.
inline std::vector<RunResult> run_many(Algorithm algo, const ProblemInstance& inst,
                                       const SwarmConfig& base, int runs,
                                       int max_threads = 0) {
    if (runs < 1) throw validation_error("need at least one run");
    const CombSet comb = (algo == Algorithm::bsso && base.factors.comb_counts)
                             ? enumerate_feasible_counts(inst)
                             : CombSet{};
    const CombSet* comb_ptr =
        (algo == Algorithm::bsso && base.factors.comb_counts) ? &comb : nullptr;

    std::vector<RunResult> results(runs);
    int workers = max_threads > 0 ? max_threads : thread_budget();
    workers = std::min(workers, runs);

    auto work = [&](int r) {
        SwarmConfig cfg = base;
        cfg.seed = base.seed + static_cast<std::uint64_t>(r);
        results[r] = run_algorithm(algo, inst, cfg, comb_ptr);
    };
    if (workers <= 1) {
        for (int r = 0; r < runs; ++r) work(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1)) work(r);
            });
        for (auto& th : pool) th.join();
    }
    return results;
}

namespace detail {

inline std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

inline std::string join_counts(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::string join_rels(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += fixed(v[i], 10);
    }
    return s;
}

}  // namespace detail

// One data row per (algorithm, run) followed by one summary row per
// algorithm. Reliability-valued fields carry 10 decimals; the timing columns
// (wall_seconds, t_avg) are the only non-deterministic content.
inline std::string solve_csv(
    const std::vector<std::pair<Algorithm, std::vector<RunResult>>>& blocks) {
    std::string csv =
        "record,algorithm,run,seed,best_fitness,best_counts,best_rels,wall_seconds,"
        "f_avg,f_max,f_min,f_stdev,t_avg\n";
    for (const auto& [algo, runs] : blocks) {
        for (std::size_t r = 0; r < runs.size(); ++r) {
            const auto& rr = runs[r];
            csv += "run," + algorithm_name(algo) + "," + std::to_string(r) + "," +
                   std::to_string(rr.seed) + "," + detail::fixed(rr.best_fitness, 10) + "," +
                   detail::join_counts(rr.best.counts) + "," + detail::join_rels(rr.best.rels) +
                   "," + detail::fixed(rr.wall_seconds, 6) + ",,,,,\n";
        }
        const SummaryStats s = summarize(runs);
        csv += "summary," + algorithm_name(algo) + ",,,,,,," + detail::fixed(s.f_avg, 10) + "," +
               detail::fixed(s.f_max, 10) + "," + detail::fixed(s.f_min, 10) + "," +
               detail::fixed(s.f_stdev, 10) + "," + detail::fixed(s.t_avg, 6) + "\n";
    }
    return csv;
}

// Strips the timing columns so two CSVs can be compared for determinism.
inline std::string strip_timing_columns(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        while (cells.size() < 13) cells.emplace_back();
        cells[7].clear();   // wall_seconds
        cells[12].clear();  // t_avg
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }
    return out;
}

// The eight factor combinations of the standard two-level screening array
// (half fraction with D = ABC): row 1 is all-off, row 8 all-on.
inline const std::array<FactorLevels, 8>& l8_combinations() {
    static const std::array<FactorLevels, 8> rows = {{
        {false, false, false, false},
        {false, false, true, true},
        {false, true, false, true},
        {false, true, true, false},
        {true, false, false, true},
        {true, false, true, false},
        {true, true, false, false},
        {true, true, true, true},
    }};
    return rows;
}

struct ScreenRow {
    int combination = 0;  // 1-based row of the array
    FactorLevels factors;
    SummaryStats stats;
    long long resource_violations = 0;
};

// Runs all eight combinations with the same master seed and run count.
inline std::vector<ScreenRow> factor_screen(const ProblemInstance& inst,
                                            const SwarmConfig& base, int runs,
                                            int max_threads = 0) {
    std::vector<ScreenRow> rows;
    rows.reserve(8);
    for (int c = 0; c < 8; ++c) {
        SwarmConfig cfg = base;
        cfg.factors = l8_combinations()[c];
        auto results = run_many(Algorithm::bsso, inst, cfg, runs, max_threads);
        ScreenRow row;
        row.combination = c + 1;
        row.factors = cfg.factors;
        row.stats = summarize(results);
        for (const auto& r : results) row.resource_violations += r.resource_violations;
        rows.push_back(row);
    }
    return rows;
}

inline std::string screen_csv(const std::vector<ScreenRow>& rows) {
    std::string csv = "combination,factor_a,factor_b,factor_c,factor_d,"
                      "f_avg,f_max,f_min,f_stdev,t_avg\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.combination) + "," +
               std::to_string(r.factors.comb_counts ? 2 : 1) + "," +
               std::to_string(r.factors.two_stage_cg ? 2 : 1) + "," +
               std::to_string(r.factors.pbest_in_rum ? 2 : 1) + "," +
               std::to_string(r.factors.adaptive_radius ? 2 : 1) + "," +
               detail::fixed(r.stats.f_avg, 10) + "," + detail::fixed(r.stats.f_max, 10) + "," +
               detail::fixed(r.stats.f_min, 10) + "," + detail::fixed(r.stats.f_stdev, 10) +
               "," + detail::fixed(r.stats.t_avg, 6) + "\n";
    }
    return csv;
}

inline std::string strip_screen_timing(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.rfind(',');
        if (pos != std::string::npos) line.resize(pos + 1);
        out += line + "\n";
    }
    return out;
}

// Key-value run configuration: `algorithm`, `nsol`, `ngen`, `runs`, `seed`,
// `cg`, `cp`, `cw`, `gamma`, `factors` (ABCD mask). `#` starts a comment.
struct RunConfigFile {
    std::optional<Algorithm> algorithm;
    std::optional<int> nsol, ngen, runs;
    std::optional<std::uint64_t> seed;
    std::optional<double> cg, cp, cw, gamma;
    std::optional<FactorLevels> factors;

    void apply(SwarmConfig& cfg) const {
        if (nsol) cfg.nsol = *nsol;
        if (ngen) cfg.ngen = *ngen;
        if (seed) cfg.seed = *seed;
        if (cg) cfg.cg = *cg;
        if (cp) cfg.cp = *cp;
        if (cw) cfg.cw = *cw;
        if (gamma) cfg.gamma = *gamma;
        if (factors) cfg.factors = *factors;
    }
};

inline RunConfigFile parse_run_config(const std::string& text) {
    RunConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw parse_error("line " + std::to_string(line_no) + ": expected 'key value'");
        const std::string key(toks[0]), value(toks[1]);
        if (key == "algorithm")
            cfg.algorithm = parse_algorithm(value);
        else if (key == "nsol")
            cfg.nsol = detail::to_int(value, line_no);
        else if (key == "ngen")
            cfg.ngen = detail::to_int(value, line_no);
        else if (key == "runs")
            cfg.runs = detail::to_int(value, line_no);
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "cg")
            cfg.cg = detail::to_double(value, line_no);
        else if (key == "cp")
            cfg.cp = detail::to_double(value, line_no);
        else if (key == "cw")
            cfg.cw = detail::to_double(value, line_no);
        else if (key == "gamma")
            cfg.gamma = detail::to_double(value, line_no);
        else if (key == "factors")
            cfg.factors = parse_factor_mask(value);
        else
            throw parse_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return cfg;
}

}  // namespace grrap
