#pragma once

#include "grrap/instance.hpp"
#include "grrap/reliability.hpp"

#include <cmath>
#include <stdexcept>

namespace grrap {

enum class Violation : unsigned {
    cost = 1u << 0,
    volume = 1u << 1,
    weight = 1u << 2,
    n_bounds = 1u << 3,
    r_bounds = 1u << 4,
};

struct ConstraintReport {
    double cost = 0.0;
    double volume = 0.0;
    double weight = 0.0;
    unsigned violated = 0;

    bool feasible() const { return violated == 0; }
    bool has(Violation v) const { return (violated & static_cast<unsigned>(v)) != 0; }
    void flag(Violation v) { violated |= static_cast<unsigned>(v); }
};

enum class PenaltyMode {
    general,    // worst of the cost/volume/weight utilization ratios
    cost_only,  // counts pre-filtered: only cost can be violated
};

struct PenaltyConfig {
    double gamma = 3.0;
    PenaltyMode mode = PenaltyMode::general;
};

// Parallel-redundant subsystem: 1 - (1-r)^n.
inline double subsystem_reliability(double r, int n) {
    if (n < 1) throw validation_error("component count must be at least 1");
    return 1.0 - std::pow(1.0 - r, n);
}

// Total cost: sum of alpha_i * (-1000/ln r_i)^beta_i * (n_i + exp(n_i/4)).
inline double system_cost(const ProblemInstance& inst, const Solution& sol) {
    double total = 0.0;
    for (int i = 0; i < inst.size(); ++i) {
        const double r = sol.rels[i];
        if (!(r > 0.0) || !(r < 1.0))
            throw std::domain_error("component reliability must lie in (0,1) for the cost model");
        const auto& p = inst.params[i];
        total += p.alpha * std::pow(-1000.0 / std::log(r), p.beta) *
                 (sol.counts[i] + std::exp(sol.counts[i] / 4.0));
    }
    return total;
}

// Total volume: sum of w_i v_i^2 n_i^2.
inline double system_volume(const ProblemInstance& inst, const std::vector<int>& counts) {
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        total += inst.params[i].wv2 * static_cast<double>(counts[i]) * counts[i];
    return total;
}

// Total weight: sum of w_i n_i exp(n_i/4).
inline double system_weight(const ProblemInstance& inst, const std::vector<int>& counts) {
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        total += inst.params[i].w * counts[i] * std::exp(counts[i] / 4.0);
    return total;
}

inline ConstraintReport check_constraints(const ProblemInstance& inst, const Solution& sol) {
    ConstraintReport rep;
    rep.cost = system_cost(inst, sol);
    rep.volume = system_volume(inst, sol.counts);
    rep.weight = system_weight(inst, sol.counts);
    if (rep.cost > inst.cost_limit) rep.flag(Violation::cost);
    if (rep.volume > inst.volume_limit) rep.flag(Violation::volume);
    if (rep.weight > inst.weight_limit) rep.flag(Violation::weight);
    for (int i = 0; i < inst.size(); ++i) {
        if (sol.counts[i] < inst.count_lb[i] || sol.counts[i] > inst.count_ub[i])
            rep.flag(Violation::n_bounds);
        if (sol.rels[i] < inst.rel_lb[i] || sol.rels[i] > inst.rel_ub[i])
            rep.flag(Violation::r_bounds);
    }
    return rep;
}

// Penalized fitness from an existing report. Feasible solutions keep their
// system reliability untouched; resource violations scale it by the worst
// utilization ratio raised to gamma. Bounds violations are reported but not
// penalized (optimizer updates never produce them), so a ratio >= 1 also
// leaves the fitness at rs.
inline double penalized_fitness(const ConstraintReport& rep, const ProblemInstance& inst,
                                double rs, const PenaltyConfig& cfg) {
    if (rep.feasible()) return rs;
    double ratio;
    if (cfg.mode == PenaltyMode::cost_only) {
        ratio = inst.cost_limit / rep.cost;
    } else {
        ratio = std::min({inst.volume_limit / rep.volume, inst.cost_limit / rep.cost,
                          inst.weight_limit / rep.weight});
    }
    if (ratio >= 1.0) return rs;
    return rs * std::pow(ratio, cfg.gamma);
}

inline double penalized_fitness(const ProblemInstance& inst, const Solution& sol, double rs,
                                const PenaltyConfig& cfg) {
    return penalized_fitness(check_constraints(inst, sol), inst, rs, cfg);
}

struct Evaluation {
    double fitness = 0.0;
    double rs = 0.0;
    ConstraintReport report;
};

// Full pipeline: per-subsystem reliabilities, exact network reliability,
// constraint report, penalized fitness. For feasible solutions the fitness is
// the exact reliability, bit for bit.
inline Evaluation evaluate_solution(const ProblemInstance& inst, const Solution& sol,
                                    const PenaltyConfig& cfg) {
    const std::size_t m = static_cast<std::size_t>(inst.size());
    if (sol.counts.size() != m || sol.rels.size() != m)
        throw validation_error("solution segment length mismatch");
    std::vector<double> node_rels(m);
    for (std::size_t i = 0; i < m; ++i)
        node_rels[i] = subsystem_reliability(sol.rels[i], sol.counts[i]);
    Evaluation ev;
    ev.rs = exact_reliability(inst.network, node_rels).value;
    ev.report = check_constraints(inst, sol);
    ev.fitness = penalized_fitness(ev.report, inst, ev.rs, cfg);
    return ev;
}

}  // namespace grrap
