#pragma once

#include "grrap/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace grrap {

struct GaParams {
    double crossover_rate = 0.6;  // two-point, on the flat 2m chromosome
    double mutation_rate = 0.4;   // uniform resample within bounds, per gene
};

struct PsoParams {
    double w_max = 0.9;
    double w_min = 0.4;  // inertia decreases linearly from w_max to w_min
    double c1 = 2.0;
    double c2 = 2.0;
    double velocity_clamp = 0.2;  // fraction of each coordinate's range
};

namespace detail {

struct GaIndividual {
    Solution sol;
    double fitness = 0.0;
};

}  // namespace detail

// Genetic algorithm over the mixed integer/real chromosome. Per generation:
// parents are paired by a random permutation, each pair produces two children
// through optional two-point crossover on the flat 2m vector, every child
// gene mutates with fixed probability, children are evaluated (exactly nsol
// evaluations), and truncation keeps the best nsol of parents plus children.
inline RunResult ga_run(const ProblemInstance& inst, const SwarmConfig& cfg,
                        const GaParams& ga = {}) {
    cfg.validate();
    inst.validate();
    const int m = inst.size();
    const int genes = 2 * m;
    const PenaltyConfig penalty{cfg.gamma, PenaltyMode::general};
    RunRng rng(cfg.seed);
    RunResult out;
    out.seed = cfg.seed;
    const auto t0 = std::chrono::steady_clock::now();

    auto evaluate = [&](detail::GaIndividual& ind) {
        Evaluation ev = evaluate_solution(inst, ind.sol, penalty);
        ++out.evaluations;
        if (ev.report.has(Violation::volume) || ev.report.has(Violation::weight))
            ++out.resource_violations;
        ind.fitness = ev.fitness;
    };

    std::vector<detail::GaIndividual> pop(cfg.nsol);
    for (auto& ind : pop) {
        ind.sol.counts.resize(m);
        ind.sol.rels.resize(m);
        for (int j = 0; j < m; ++j)
            ind.sol.counts[j] = rng.uniform_int(inst.count_lb[j], inst.count_ub[j]);
        for (int j = 0; j < m; ++j)
            ind.sol.rels[j] = rng.uniform(inst.rel_lb[j], inst.rel_ub[j]);
        evaluate(ind);
    }

    auto best_of = [](const std::vector<detail::GaIndividual>& v) {
        std::size_t b = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i].fitness > v[b].fitness) b = i;
        return b;
    };
    detail::GaIndividual gbest = pop[best_of(pop)];
    out.history.reserve(cfg.ngen + 1);
    out.history.push_back(gbest.fitness);

    auto mutate = [&](detail::GaIndividual& ind) {
        for (int g = 0; g < genes; ++g) {
            if (rng.uniform() >= ga.mutation_rate) continue;
            if (g < m)
                ind.sol.counts[g] = rng.uniform_int(inst.count_lb[g], inst.count_ub[g]);
            else
                ind.sol.rels[g - m] = rng.uniform(inst.rel_lb[g - m], inst.rel_ub[g - m]);
        }
    };
    auto swap_gene = [&](detail::GaIndividual& a, detail::GaIndividual& b, int g) {
        if (g < m)
            std::swap(a.sol.counts[g], b.sol.counts[g]);
        else
            std::swap(a.sol.rels[g - m], b.sol.rels[g - m]);
    };

    std::vector<std::size_t> perm(cfg.nsol);
    for (int t = 0; t < cfg.ngen; ++t) {
        for (int i = 0; i < cfg.nsol; ++i) perm[i] = i;
        for (int i = cfg.nsol - 1; i > 0; --i)  // Fisher-Yates
            std::swap(perm[i], perm[rng.index(i + 1)]);

        std::vector<detail::GaIndividual> offspring;
        offspring.reserve(cfg.nsol);
        for (int k = 0; k + 1 < cfg.nsol; k += 2) {
            detail::GaIndividual c1 = pop[perm[k]];
            detail::GaIndividual c2 = pop[perm[k + 1]];
            if (rng.uniform() < ga.crossover_rate) {
                int a = static_cast<int>(rng.index(genes + 1));
                int b = static_cast<int>(rng.index(genes + 1));
                if (a > b) std::swap(a, b);
                for (int g = a; g < b; ++g) swap_gene(c1, c2, g);
            }
            mutate(c1);
            mutate(c2);
            evaluate(c1);
            evaluate(c2);
            offspring.push_back(std::move(c1));
            offspring.push_back(std::move(c2));
        }
        if (cfg.nsol % 2 == 1) {  // odd population: last parent reproduces alone
            detail::GaIndividual c = pop[perm[cfg.nsol - 1]];
            mutate(c);
            evaluate(c);
            offspring.push_back(std::move(c));
        }

        // elite survival: best nsol of parents and children; stable sort keeps
        // parents ahead on ties so the population is deterministic
        std::vector<detail::GaIndividual> merged;
        merged.reserve(2 * cfg.nsol);
        for (auto& ind : pop) merged.push_back(std::move(ind));
        for (auto& ind : offspring) merged.push_back(std::move(ind));
        std::stable_sort(merged.begin(), merged.end(),
                         [](const auto& a, const auto& b) { return a.fitness > b.fitness; });
        merged.resize(cfg.nsol);
        pop = std::move(merged);

        if (pop[0].fitness > gbest.fitness) gbest = pop[0];
        out.history.push_back(gbest.fitness);
    }

    out.best = gbest.sol;
    out.best_fitness = gbest.fitness;
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

namespace detail {

struct PsoParticle {
    std::vector<double> x, v;
    std::vector<double> pbest;
    double fitness = 0.0;
    double pbest_fitness = 0.0;
};

}  // namespace detail

// Global-best PSO on the flat 2m real vector. Count coordinates live as reals
// and are rounded to the nearest integer (then clamped) only for evaluation.
// Velocities are clamped to a fraction of each coordinate's range, positions
// to the bounds.
inline RunResult pso_run(const ProblemInstance& inst, const SwarmConfig& cfg,
                         const PsoParams& pso = {}) {
    cfg.validate();
    inst.validate();
    const int m = inst.size();
    const int dims = 2 * m;
    const PenaltyConfig penalty{cfg.gamma, PenaltyMode::general};
    RunRng rng(cfg.seed);
    RunResult out;
    out.seed = cfg.seed;
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> lo(dims), hi(dims), vmax(dims);
    for (int j = 0; j < m; ++j) {
        lo[j] = inst.count_lb[j];
        hi[j] = inst.count_ub[j];
        lo[m + j] = inst.rel_lb[j];
        hi[m + j] = inst.rel_ub[j];
    }
    for (int d = 0; d < dims; ++d) vmax[d] = pso.velocity_clamp * (hi[d] - lo[d]);

    auto decode = [&](const std::vector<double>& x) {
        Solution s;
        s.counts.resize(m);
        s.rels.assign(x.begin() + m, x.end());
        for (int j = 0; j < m; ++j) {
            int n = static_cast<int>(std::llround(x[j]));
            s.counts[j] = std::clamp(n, inst.count_lb[j], inst.count_ub[j]);
        }
        return s;
    };
    auto evaluate = [&](detail::PsoParticle& p) {
        Evaluation ev = evaluate_solution(inst, decode(p.x), penalty);
        ++out.evaluations;
        if (ev.report.has(Violation::volume) || ev.report.has(Violation::weight))
            ++out.resource_violations;
        p.fitness = ev.fitness;
    };

    std::vector<detail::PsoParticle> swarm(cfg.nsol);
    std::vector<double> gbest;
    double gbest_fitness = -1.0;
    for (auto& p : swarm) {
        p.x.resize(dims);
        p.v.assign(dims, 0.0);
        for (int d = 0; d < dims; ++d) p.x[d] = rng.uniform(lo[d], hi[d]);
        evaluate(p);
        p.pbest = p.x;
        p.pbest_fitness = p.fitness;
        if (p.fitness > gbest_fitness) {
            gbest_fitness = p.fitness;
            gbest = p.x;
        }
    }
    out.history.reserve(cfg.ngen + 1);
    out.history.push_back(gbest_fitness);

    for (int t = 0; t < cfg.ngen; ++t) {
        const double w =
            pso.w_max - (pso.w_max - pso.w_min) * static_cast<double>(t) / cfg.ngen;
        for (auto& p : swarm) {
            for (int d = 0; d < dims; ++d) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                double v = w * p.v[d] + pso.c1 * r1 * (p.pbest[d] - p.x[d]) +
                           pso.c2 * r2 * (gbest[d] - p.x[d]);
                p.v[d] = std::clamp(v, -vmax[d], vmax[d]);
                p.x[d] = std::clamp(p.x[d] + p.v[d], lo[d], hi[d]);
            }
            evaluate(p);
            if (p.fitness > p.pbest_fitness) {
                p.pbest_fitness = p.fitness;
                p.pbest = p.x;
                if (p.fitness > gbest_fitness) {
                    gbest_fitness = p.fitness;
                    gbest = p.x;
                }
            }
        }
        out.history.push_back(gbest_fitness);
    }

    out.best = decode(gbest);
    out.best_fitness = gbest_fitness;
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace grrap
