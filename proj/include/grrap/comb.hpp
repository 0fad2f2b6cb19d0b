#pragma once

#include "grrap/objective.hpp"

#include <vector>

namespace grrap {

// The set of component-count vectors that stay within bounds and within the
// volume and weight limits, in multi-state addition order (rightmost
// coordinate counts fastest). Optimizers address members by index.
struct CombSet {
    std::vector<std::vector<int>> members;
    std::vector<double> volumes;
    std::vector<double> weights;

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool operator==(const CombSet&) const = default;
};

namespace detail {

// Per-subsystem resource terms tabulated over the count range, so every
// candidate is costed with the same float operations check_constraints uses.
struct ResourceTables {
    std::vector<std::vector<double>> vol, wt;  // [i][n]
    explicit ResourceTables(const ProblemInstance& inst) {
        const int m = inst.size();
        vol.resize(m);
        wt.resize(m);
        for (int i = 0; i < m; ++i) {
            vol[i].resize(inst.count_ub[i] + 1);
            wt[i].resize(inst.count_ub[i] + 1);
            for (int n = 0; n <= inst.count_ub[i]; ++n) {
                vol[i][n] = inst.params[i].wv2 * static_cast<double>(n) * n;
                wt[i][n] = inst.params[i].w * n * std::exp(n / 4.0);
            }
        }
    }
    double volume(const std::vector<int>& x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += vol[i][x[i]];
        return s;
    }
    double weight(const std::vector<int>& x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += wt[i][x[i]];
        return s;
    }
};

}  // namespace detail

// Multi-state binary-addition enumeration with monotone pruning: volume and
// weight are strictly increasing in every coordinate (positive coefficients,
// guaranteed by instance validation), so once an increment of coordinate i
// violates a limit, every vector reached by raising coordinate i further
// dominates the violating one and is skipped by resetting i and carrying left.
// An empty result means even the all-lower-bounds vector breaks a limit; the
// caller must treat that as instance infeasibility.
inline CombSet enumerate_feasible_counts(const ProblemInstance& inst) {
    inst.validate();
    const int m = inst.size();
    const detail::ResourceTables tab(inst);
    CombSet comb;
    std::vector<int> x(inst.count_lb);

    auto admit = [&](const std::vector<int>& v) {
        double gv = tab.volume(v), gw = tab.weight(v);
        if (gv <= inst.volume_limit && gw <= inst.weight_limit) {
            comb.members.push_back(v);
            comb.volumes.push_back(gv);
            comb.weights.push_back(gw);
            return true;
        }
        return false;
    };

    if (!admit(x)) return comb;  // minimum violates: everything does
    int i = m - 1;
    while (i >= 0) {
        if (x[i] == inst.count_ub[i]) {
            x[i] = inst.count_lb[i];
            --i;
            continue;
        }
        ++x[i];
        if (admit(x)) {
            i = m - 1;
        } else {
            x[i] = inst.count_lb[i];
            --i;
        }
    }
    return comb;
}

// Oracle: plain nested enumeration of the whole bounds grid, filtered by the
// same volume/weight checks.
inline CombSet brute_force_counts(const ProblemInstance& inst) {
    inst.validate();
    const int m = inst.size();
    double grid = 1.0;
    for (int i = 0; i < m; ++i) grid *= inst.count_ub[i] - inst.count_lb[i] + 1;
    if (grid > 1e7) throw capacity_error("count grid exceeds 1e7 vectors");

    const detail::ResourceTables tab(inst);
    CombSet comb;
    std::vector<int> x(inst.count_lb);
    while (true) {
        double gv = tab.volume(x), gw = tab.weight(x);
        if (gv <= inst.volume_limit && gw <= inst.weight_limit) {
            comb.members.push_back(x);
            comb.volumes.push_back(gv);
            comb.weights.push_back(gw);
        }
        int i = m - 1;
        while (i >= 0 && x[i] == inst.count_ub[i]) {
            x[i] = inst.count_lb[i];
            --i;
        }
        if (i < 0) break;
        ++x[i];
    }
    return comb;
}

}  // namespace grrap
