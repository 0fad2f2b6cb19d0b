#pragma once

#include "grrap/network.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace grrap {

// One binary node-state vector over all m subsystems. Vectors produced by the
// enumeration engine always have the source and sink states set to 1.
using NodeStateVector = std::vector<std::uint8_t>;

// Cap on the number of free (intermediate) nodes the exact engine will
// enumerate: 2^30 state vectors.
inline constexpr int default_enumeration_cap = 30;

struct ReliabilityResult {
    double value = 0.0;
    std::uint64_t connected_vectors = 0;
    std::uint64_t enumerated_vectors = 0;
};

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

namespace detail {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Intermediate node indices in ascending order (everything but the terminals).
inline std::vector<int> intermediate_nodes(const Network& net) {
    std::vector<int> mid;
    mid.reserve(net.node_count - 2);
    for (int i = 0; i < net.node_count; ++i)
        if (i != net.source && i != net.sink) mid.push_back(i);
    return mid;
}

}  // namespace detail

// All 2^(m-2) node state vectors with both terminals fixed to 1, in
// binary-addition order: the rightmost intermediate node toggles first, i.e.
// the last intermediate coordinate is the least significant counter bit.
inline std::vector<NodeStateVector> enumerate_state_vectors(
    const Network& net, int cap = default_enumeration_cap) {
    const auto mid = detail::intermediate_nodes(net);
    const int k = static_cast<int>(mid.size());
    if (k > cap)
        throw capacity_error("state-vector enumeration over " + std::to_string(k) +
                             " intermediate nodes exceeds cap " + std::to_string(cap));
    std::vector<NodeStateVector> result;
    result.reserve(std::size_t{1} << k);
    for (std::uint64_t counter = 0; counter < (std::uint64_t{1} << k); ++counter) {
        NodeStateVector x(net.node_count, 0);
        x[net.source] = 1;
        x[net.sink] = 1;
        for (int pos = 0; pos < k; ++pos)
            x[mid[pos]] = static_cast<std::uint8_t>((counter >> (k - 1 - pos)) & 1);
        result.push_back(std::move(x));
    }
    return result;
}

// Layered connectivity test: expand from the source one layer at a time over
// arcs whose both endpoints are active, halting when the sink is reached or a
// layer comes up empty.
inline bool is_connected(const Network& net, const NodeStateVector& x) {
    if (static_cast<int>(x.size()) != net.node_count)
        throw validation_error("state vector length mismatch");
    if (!x[net.source] || !x[net.sink]) return false;
    std::vector<char> seen(net.node_count, 0);
    seen[net.source] = 1;
    std::vector<int> layer{net.source};
    while (!layer.empty()) {
        std::vector<int> next;
        for (int u : layer)
            for (int v : net.out[u]) {
                if (!x[v] || seen[v]) continue;
                if (v == net.sink) return true;
                seen[v] = 1;
                next.push_back(v);
            }
        layer.swap(next);
    }
    return false;
}

// Occurrence probability of a state vector: product over all m nodes of
// rels[j] when up and 1-rels[j] when down. Terminal factors are included.
inline double state_probability(const NodeStateVector& x, const std::vector<double>& rels) {
    if (x.size() != rels.size()) throw validation_error("state/reliability length mismatch");
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) p *= x[j] ? rels[j] : 1.0 - rels[j];
    return p;
}

// Exact two-terminal reliability: enumerate the 2^(m-2) state vectors with
// terminals up, drop vectors with fewer active nodes than the shortest path
// needs, test the rest layer by layer, and sum the occurrence probabilities
// of the connected ones. Compensated summation: the terms can span several
// orders of magnitude.
inline ReliabilityResult exact_reliability(const Network& net, const std::vector<double>& rels,
                                           int cap = default_enumeration_cap) {
    if (static_cast<int>(rels.size()) != net.node_count)
        throw validation_error("reliability vector length mismatch");
    for (double r : rels)
        if (!(r >= 0.0 && r <= 1.0)) throw validation_error("node reliability outside [0,1]");

    const auto mid = detail::intermediate_nodes(net);
    const int k = static_cast<int>(mid.size());
    if (k > cap || net.node_count > 32)
        throw capacity_error("exact evaluation over " + std::to_string(k) +
                             " intermediate nodes exceeds cap " + std::to_string(cap));
    const int np = min_path_node_count(net);

    std::vector<std::uint32_t> out_mask(net.node_count, 0);
    for (auto [u, v] : net.edges) out_mask[u] |= std::uint32_t{1} << v;
    // counter bit b (LSB first) maps to the (k-1-b)-th intermediate node
    std::vector<std::uint32_t> bit_node(k);
    for (int b = 0; b < k; ++b) bit_node[b] = std::uint32_t{1} << mid[k - 1 - b];
    const std::uint32_t term_mask =
        (std::uint32_t{1} << net.source) | (std::uint32_t{1} << net.sink);
    const std::uint32_t sink_bit = std::uint32_t{1} << net.sink;

    detail::KahanSum sum;
    std::uint64_t connected = 0;
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t counter = 0; counter < total; ++counter) {
        std::uint32_t active = term_mask;
        for (std::uint64_t bits = counter; bits; bits &= bits - 1)
            active |= bit_node[std::countr_zero(bits)];
        if (std::popcount(active) < np) continue;  // cheap filter before the layered search
        std::uint32_t seen = std::uint32_t{1} << net.source;
        std::uint32_t layer = seen;
        bool hit = false;
        while (layer) {
            std::uint32_t next = 0;
            for (std::uint32_t f = layer; f; f &= f - 1) next |= out_mask[std::countr_zero(f)];
            next &= active & ~seen;
            if (next & sink_bit) {
                hit = true;
                break;
            }
            seen |= next;
            layer = next;
        }
        if (!hit) continue;
        ++connected;
        double p = 1.0;
        for (int j = 0; j < net.node_count; ++j)
            p *= ((active >> j) & 1) ? rels[j] : 1.0 - rels[j];
        sum.add(p);
    }
    return {std::min(sum.sum, 1.0), connected, total};
}

// Independent oracle: sum over all 2^m full node states (terminals free) whose
// induced subgraph connects source to sink, tested with a plain stack-based
// search rather than the layered one.
inline double brute_force_reliability(const Network& net, const std::vector<double>& rels) {
    if (static_cast<int>(rels.size()) != net.node_count)
        throw validation_error("reliability vector length mismatch");
    if (net.node_count > 20)
        throw capacity_error("brute force limited to 20 nodes");
    detail::KahanSum sum;
    const std::uint32_t total = std::uint32_t{1} << net.node_count;
    std::vector<int> stack;
    std::vector<char> seen(net.node_count);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (!((mask >> net.source) & 1) || !((mask >> net.sink) & 1)) continue;
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, net.source);
        seen[net.source] = 1;
        bool hit = false;
        while (!stack.empty() && !hit) {
            int u = stack.back();
            stack.pop_back();
            for (int v : net.out[u]) {
                if (!((mask >> v) & 1) || seen[v]) continue;
                if (v == net.sink) {
                    hit = true;
                    break;
                }
                seen[v] = 1;
                stack.push_back(v);
            }
        }
        if (!hit) continue;
        double p = 1.0;
        for (int j = 0; j < net.node_count; ++j)
            p *= ((mask >> j) & 1) ? rels[j] : 1.0 - rels[j];
        sum.add(p);
    }
    return sum.sum;
}

// Bernoulli-sampled estimate, deterministic for a fixed seed. Node states are
// drawn in index order, one uniform draw per node per sample.
inline MonteCarloEstimate monte_carlo_reliability(const Network& net,
                                                  const std::vector<double>& rels,
                                                  std::uint64_t samples, std::uint64_t seed) {
    if (static_cast<int>(rels.size()) != net.node_count)
        throw validation_error("reliability vector length mismatch");
    if (samples < 1) throw validation_error("need at least one sample");
    std::mt19937_64 rng(seed);
    auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    std::vector<std::uint8_t> x(net.node_count);
    std::vector<int> stack;
    std::vector<char> seen(net.node_count);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (int j = 0; j < net.node_count; ++j) x[j] = u01() < rels[j] ? 1 : 0;
        if (!x[net.source] || !x[net.sink]) continue;
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, net.source);
        seen[net.source] = 1;
        bool hit = false;
        while (!stack.empty() && !hit) {
            int u = stack.back();
            stack.pop_back();
            for (int v : net.out[u]) {
                if (!x[v] || seen[v]) continue;
                if (v == net.sink) {
                    hit = true;
                    break;
                }
                seen[v] = 1;
                stack.push_back(v);
            }
        }
        if (hit) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

}  // namespace grrap
