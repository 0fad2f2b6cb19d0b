#pragma once

#include "grrap/comb.hpp"
#include "grrap/rng.hpp"

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace grrap {

// The four update-mechanism variants screened by the factor experiment.
//   A comb_counts:     component counts move through the feasible-combination
//                      index (one selector per particle) instead of
//                      coordinate-wise over the raw integer ranges.
//   B two_stage_cg:    the gBest-copy probability is held at zero for the
//                      first half of the run, then restored.
//   C pbest_in_rum:    reliability updates get a pBest branch in addition to
//                      gBest / self / contraction.
//   D adaptive_radius: the perturbation radius shrinks as generations pass.
// All four off is the plain swarm baseline; all four on is the full method.
struct FactorLevels {
    bool comb_counts = true;
    bool two_stage_cg = true;
    bool pbest_in_rum = true;
    bool adaptive_radius = true;

    bool operator==(const FactorLevels&) const = default;
};

// Parses a 4-character 0/1 mask in A,B,C,D order, e.g. "1011".
inline FactorLevels parse_factor_mask(const std::string& mask) {
    if (mask.size() != 4 || mask.find_first_not_of("01") != std::string::npos)
        throw validation_error("factor mask must be 4 characters of 0/1 (ABCD order)");
    return {mask[0] == '1', mask[1] == '1', mask[2] == '1', mask[3] == '1'};
}

inline std::string format_factor_mask(const FactorLevels& f) {
    std::string s(4, '0');
    s[0] = f.comb_counts ? '1' : '0';
    s[1] = f.two_stage_cg ? '1' : '0';
    s[2] = f.pbest_in_rum ? '1' : '0';
    s[3] = f.adaptive_radius ? '1' : '0';
    return s;
}

struct SwarmConfig {
    int nsol = 100;
    int ngen = 1000;
    double cg = 0.25;  // cumulative selector thresholds: gBest / pBest / keep
    double cp = 0.5;
    double cw = 0.6;
    double gamma = 3.0;
    std::uint64_t seed = 1;
    FactorLevels factors;

    void validate() const {
        if (nsol < 1) throw validation_error("nsol must be at least 1");
        if (ngen < 0) throw validation_error("ngen must be non-negative");
        if (!(0.0 <= cg && cg <= cp && cp <= cw && cw <= 1.0))
            throw validation_error("thresholds must satisfy 0 <= cg <= cp <= cw <= 1");
        if (!(gamma > 0)) throw validation_error("gamma must be positive");
    }
};

struct RunResult {
    Solution best;
    double best_fitness = 0.0;
    std::vector<double> history;  // gBest fitness after init and after each generation
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    long long evaluations = 0;
    long long resource_violations = 0;     // evaluated solutions violating volume or weight
    long long early_gbest_selections = 0;  // gBest-copy branch picks in the first half
};

// gBest-copy threshold for generation t under the two-stage schedule.
inline double effective_cg(const SwarmConfig& cfg, int t) {
    if (cfg.factors.two_stage_cg && 2 * t < cfg.ngen) return 0.0;
    return cfg.cg;
}

// Coordinate-wise integer update: each coordinate copies gBest, copies pBest,
// stays, or is redrawn uniformly inside its bounds, driven by one selector
// per coordinate. Resample draws come from `rng` in ascending coordinate
// order after the selectors were drawn.
inline std::vector<int> n_um_raw(std::span<const int> counts, std::span<const int> pbest,
                                 std::span<const int> gbest, std::span<const int> lb,
                                 std::span<const int> ub, std::span<const double> rho,
                                 double cg, double cp, double cw, RunRng& rng) {
    std::vector<int> next(counts.begin(), counts.end());
    for (std::size_t j = 0; j < next.size(); ++j) {
        if (rho[j] < cg)
            next[j] = gbest[j];
        else if (rho[j] < cp)
            next[j] = pbest[j];
        else if (rho[j] < cw)
            ;  // keep
        else
            next[j] = rng.uniform_int(lb[j], ub[j]);
    }
    return next;
}

// Combination-index update: one selector for the whole particle, moving the
// single recombined integer variable between gBest, pBest, itself, or a fresh
// uniform member of the feasible set.
inline std::size_t n_um_comb(std::size_t idx, std::size_t pbest_idx, std::size_t gbest_idx,
                             std::size_t comb_size, double rho, double cg, double cp, double cw,
                             RunRng& rng) {
    if (rho < cg) return gbest_idx;
    if (rho < cp) return pbest_idx;
    if (rho < cw) return idx;
    return rng.index(comb_size);
}

// Perturbation radius for one reliability coordinate. The adaptive variant
// scales the denominator by (ngen+t)/ngen, halving the radius by the final
// generation.
inline double r_um_radius(const SwarmConfig& cfg, int t, double range, int nvar) {
    double scale = cfg.factors.adaptive_radius
                       ? (static_cast<double>(cfg.ngen) + t) / static_cast<double>(cfg.ngen)
                       : 1.0;
    return std::abs(range) / (2.0 * scale * nvar);
}

// Reliability-segment update. One selector per coordinate picks the branch;
// one raw uniform draw feeds the perturbation (symmetric delta in [-0.5,0.5],
// except the one-sided gBest jump of the three-branch variant). Branches that
// reference a solution equal to the current value fall through to the
// self-perturbation branch. Out-of-bounds results are redrawn uniformly
// inside the coordinate's bounds.
//
// pbest_branch=true  -> four branches: gBest+du | pBest+du | self+du |
//                       contraction toward gBest, thresholds cg/cp/cw.
// pbest_branch=false -> three branches: self+du | gBest jump | contraction,
//                       thresholds cg/cw (a coordinate sitting on gBest
//                       always self-perturbs).
inline std::vector<double> r_um(std::span<const double> rels, std::span<const double> pbest,
                                std::span<const double> gbest, std::span<const double> radius,
                                std::span<const double> rho, double cg, double cp, double cw,
                                bool pbest_branch, std::span<const double> lb,
                                std::span<const double> ub, RunRng& rng) {
    std::vector<double> next(rels.begin(), rels.end());
    for (std::size_t j = 0; j < next.size(); ++j) {
        const double r = rels[j];
        const double raw = rng.uniform();
        const double delta = raw - 0.5;
        double v;
        if (pbest_branch) {
            if (rho[j] < cg && r != gbest[j])
                v = gbest[j] + delta * radius[j];
            else if (rho[j] >= cg && rho[j] < cp && r != pbest[j])
                v = pbest[j] + delta * radius[j];
            else if (rho[j] >= cw && r != gbest[j])
                v = r + delta * (r - gbest[j]);
            else
                v = r + delta * radius[j];
        } else {
            if (r == gbest[j] || rho[j] < cg)
                v = r + delta * radius[j];
            else if (rho[j] < cw)
                v = gbest[j] + raw * radius[j];
            else
                v = r + delta * (r - gbest[j]);
        }
        if (v < lb[j] || v > ub[j]) v = rng.uniform(lb[j], ub[j]);
        next[j] = v;
    }
    return next;
}

namespace detail {

struct SwarmParticle {
    std::size_t comb_idx = 0;       // used when factor A is on
    std::vector<int> counts;        // used when factor A is off
    std::vector<double> rels;
    double fitness = 0.0;
    std::size_t pbest_idx = 0;
    std::vector<int> pbest_counts;
    std::vector<double> pbest_rels;
    double pbest_fitness = 0.0;
};

}  // namespace detail

// One full swarm run. Counts move by combination index (factor A) or raw
// coordinates; reliabilities move by the stepwise update; pBest is replaced
// on strict improvement and gBest immediately follows the best pBest. With
// factor A on the fitness only has to penalize cost, every visited count
// vector already satisfies volume and weight.
inline RunResult bsso_run(const ProblemInstance& inst, const SwarmConfig& cfg,
                          const CombSet* comb = nullptr) {
    cfg.validate();
    inst.validate();
    const int m = inst.size();
    const bool use_comb = cfg.factors.comb_counts;

    CombSet owned;
    if (use_comb && comb == nullptr) {
        owned = enumerate_feasible_counts(inst);
        comb = &owned;
    }
    if (use_comb && comb->empty())
        throw validation_error("feasible combination set is empty: instance infeasible");

    const PenaltyConfig penalty{cfg.gamma,
                                use_comb ? PenaltyMode::cost_only : PenaltyMode::general};
    RunRng rng(cfg.seed);
    RunResult out;
    out.seed = cfg.seed;
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<detail::SwarmParticle> swarm(cfg.nsol);
    Solution scratch;
    scratch.counts.resize(m);

    auto evaluate = [&](detail::SwarmParticle& p) {
        scratch.counts = use_comb ? comb->members[p.comb_idx] : p.counts;
        scratch.rels = p.rels;
        Evaluation ev = evaluate_solution(inst, scratch, penalty);
        ++out.evaluations;
        if (ev.report.has(Violation::volume) || ev.report.has(Violation::weight))
            ++out.resource_violations;
        p.fitness = ev.fitness;
    };

    std::size_t gbest_idx = 0;
    std::vector<int> gbest_counts(m);
    std::vector<double> gbest_rels(m);
    double gbest_fitness = -1.0;

    auto offer_gbest = [&](const detail::SwarmParticle& p) {
        if (p.pbest_fitness > gbest_fitness) {
            gbest_fitness = p.pbest_fitness;
            gbest_idx = p.pbest_idx;
            gbest_counts = p.pbest_counts;
            gbest_rels = p.pbest_rels;
        }
    };

    for (auto& p : swarm) {
        if (use_comb) {
            p.comb_idx = rng.index(comb->size());
        } else {
            p.counts.resize(m);
            for (int j = 0; j < m; ++j)
                p.counts[j] = rng.uniform_int(inst.count_lb[j], inst.count_ub[j]);
        }
        p.rels.resize(m);
        for (int j = 0; j < m; ++j) p.rels[j] = rng.uniform(inst.rel_lb[j], inst.rel_ub[j]);
        evaluate(p);
        p.pbest_idx = p.comb_idx;
        p.pbest_counts = use_comb ? comb->members[p.comb_idx] : p.counts;
        p.pbest_rels = p.rels;
        p.pbest_fitness = p.fitness;
        offer_gbest(p);
    }
    out.history.reserve(cfg.ngen + 1);
    out.history.push_back(gbest_fitness);

    std::vector<double> rho(m), radius(m);
    for (int t = 0; t < cfg.ngen; ++t) {
        const double cg_t = effective_cg(cfg, t);
        const bool first_half = 2 * t < cfg.ngen;
        for (int j = 0; j < m; ++j)
            radius[j] = r_um_radius(cfg, t, inst.rel_ub[j] - inst.rel_lb[j], m);

        for (auto& p : swarm) {
            if (use_comb) {
                const double sel = rng.uniform();
                if (first_half && sel < cg_t) ++out.early_gbest_selections;
                p.comb_idx = n_um_comb(p.comb_idx, p.pbest_idx, gbest_idx, comb->size(), sel,
                                       cg_t, cfg.cp, cfg.cw, rng);
            } else {
                for (int j = 0; j < m; ++j) {
                    rho[j] = rng.uniform();
                    if (first_half && rho[j] < cg_t) ++out.early_gbest_selections;
                }
                p.counts = n_um_raw(p.counts, p.pbest_counts, gbest_counts, inst.count_lb,
                                    inst.count_ub, rho, cg_t, cfg.cp, cfg.cw, rng);
            }
            for (int j = 0; j < m; ++j) {
                rho[j] = rng.uniform();
                if (first_half && rho[j] < cg_t) ++out.early_gbest_selections;
            }
            p.rels = r_um(p.rels, p.pbest_rels, gbest_rels, radius, rho, cg_t, cfg.cp, cfg.cw,
                          cfg.factors.pbest_in_rum, inst.rel_lb, inst.rel_ub, rng);
            evaluate(p);
            if (p.fitness > p.pbest_fitness) {
                p.pbest_fitness = p.fitness;
                p.pbest_idx = p.comb_idx;
                p.pbest_counts = use_comb ? comb->members[p.comb_idx] : p.counts;
                p.pbest_rels = p.rels;
                offer_gbest(p);
            }
        }
        out.history.push_back(gbest_fitness);
    }

    out.best.counts = gbest_counts;
    out.best.rels = gbest_rels;
    out.best_fitness = gbest_fitness;
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// Plain swarm baseline: every factor at its base level, full penalty.
inline RunResult sso_run(const ProblemInstance& inst, const SwarmConfig& cfg) {
    SwarmConfig base = cfg;
    base.factors = FactorLevels{false, false, false, false};
    return bsso_run(inst, base);
}

}  // namespace grrap
