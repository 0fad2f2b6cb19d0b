#include "doctest.h"

#include "grrap/reliability.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace grrap;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Network bridge() { return parse_network(slurp("data/bridge.net")); }

NodeStateVector vec(std::initializer_list<int> bits) {
    NodeStateVector x;
    for (int b : bits) x.push_back(static_cast<std::uint8_t>(b));
    return x;
}

// plain reachability on the active-node subgraph, independent of the layered
// implementation
bool bfs_oracle(const Network& net, const NodeStateVector& x) {
    if (!x[net.source] || !x[net.sink]) return false;
    std::vector<char> seen(net.node_count, 0);
    std::vector<int> q{net.source};
    seen[net.source] = 1;
    while (!q.empty()) {
        int u = q.back();
        q.pop_back();
        for (int v : net.out[u])
            if (x[v] && !seen[v]) {
                seen[v] = 1;
                q.push_back(v);
            }
    }
    return seen[net.sink];
}

Network random_network(std::mt19937_64& rng, int m) {
    auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    while (true) {
        double density = 0.15 + 0.35 * u01();
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v)
                if (u != v && u01() < density) edges.emplace_back(u, v);
        try {
            return Network(m, 0, m - 1, std::move(edges));
        } catch (const validation_error&) {
        }
    }
}

const std::vector<double> kWorkedRels = {0.99887, 0.97851, 0.97909,
                                         0.98412, 0.97069, 0.99819};

}  // namespace

TEST_CASE("state vectors of the bridge come out in binary-addition order") {
    auto vecs = enumerate_state_vectors(bridge());
    REQUIRE(vecs.size() == 16);
    // the full golden table: terminals pinned to 1, middle four counting up
    // with the rightmost coordinate toggling first
    std::vector<NodeStateVector> want = {
        vec({1, 0, 0, 0, 0, 1}), vec({1, 0, 0, 0, 1, 1}), vec({1, 0, 0, 1, 0, 1}),
        vec({1, 0, 0, 1, 1, 1}), vec({1, 0, 1, 0, 0, 1}), vec({1, 0, 1, 0, 1, 1}),
        vec({1, 0, 1, 1, 0, 1}), vec({1, 0, 1, 1, 1, 1}), vec({1, 1, 0, 0, 0, 1}),
        vec({1, 1, 0, 0, 1, 1}), vec({1, 1, 0, 1, 0, 1}), vec({1, 1, 0, 1, 1, 1}),
        vec({1, 1, 1, 0, 0, 1}), vec({1, 1, 1, 0, 1, 1}), vec({1, 1, 1, 1, 0, 1}),
        vec({1, 1, 1, 1, 1, 1})};
    CHECK(vecs == want);
}

TEST_CASE("degenerate enumerations") {
    Network two = parse_network("nodes 2\nsource 1\nsink 2\nedge 1 2\n");
    auto vecs = enumerate_state_vectors(two);
    REQUIRE(vecs.size() == 1);
    CHECK(vecs[0] == vec({1, 1}));

    Network chain3 = parse_network("nodes 3\nsource 1\nsink 3\nedge 1 2\nedge 2 3\n");
    auto v3 = enumerate_state_vectors(chain3);
    REQUIRE(v3.size() == 2);
    CHECK(v3[0] == vec({1, 0, 1}));
    CHECK(v3[1] == vec({1, 1, 1}));

    CHECK_THROWS_AS(enumerate_state_vectors(bridge(), 3), capacity_error);
}

TEST_CASE("layered connectivity matches the worked bridge cases") {
    Network net = bridge();
    CHECK_FALSE(is_connected(net, vec({1, 0, 1, 1, 0, 1})));  // dead-ends after node 3
    CHECK(is_connected(net, vec({1, 0, 1, 0, 1, 1})));
    CHECK(is_connected(net, vec({1, 1, 1, 1, 1, 1})));
    CHECK_FALSE(is_connected(net, vec({0, 1, 1, 1, 1, 1})));  // source down
}

TEST_CASE("exactly the eight documented bridge vectors are connected") {
    Network net = bridge();
    std::vector<NodeStateVector> want = {
        vec({1, 0, 1, 0, 1, 1}), vec({1, 0, 1, 1, 1, 1}), vec({1, 1, 0, 0, 1, 1}),
        vec({1, 1, 0, 1, 0, 1}), vec({1, 1, 0, 1, 1, 1}), vec({1, 1, 1, 0, 1, 1}),
        vec({1, 1, 1, 1, 0, 1}), vec({1, 1, 1, 1, 1, 1})};
    std::vector<NodeStateVector> got;
    for (const auto& x : enumerate_state_vectors(net))
        if (is_connected(net, x)) got.push_back(x);
    CHECK(got == want);
}

TEST_CASE("state probabilities reproduce the worked products") {
    CHECK(std::abs(state_probability(vec({1, 1, 1, 1, 1, 1}), kWorkedRels) - 0.91251) < 5e-6);
    CHECK(std::abs(state_probability(vec({1, 0, 1, 0, 1, 1}), kWorkedRels) - 0.00032) < 5e-6);
    CHECK(state_probability(vec({1, 1, 1}), {1.0, 1.0, 1.0}) == 1.0);
    CHECK_THROWS_AS(state_probability(vec({1, 1}), {0.5}), validation_error);
}

TEST_CASE("every worked bridge term matches at its printed precision") {
    // connected vector -> printed five-decimal probability
    const std::vector<std::pair<NodeStateVector, double>> rows = {
        {vec({1, 0, 1, 0, 1, 1}), 0.00032}, {vec({1, 0, 1, 1, 1, 1}), 0.02004},
        {vec({1, 1, 0, 0, 1, 1}), 0.00031}, {vec({1, 1, 0, 1, 0, 1}), 0.00059},
        {vec({1, 1, 0, 1, 1, 1}), 0.01949}, {vec({1, 1, 1, 0, 1, 1}), 0.01472},
        {vec({1, 1, 1, 1, 0, 1}), 0.02755}, {vec({1, 1, 1, 1, 1, 1}), 0.91251}};
    for (const auto& [x, printed] : rows)
        CHECK(std::abs(state_probability(x, kWorkedRels) - printed) < 5e-6);
}

TEST_CASE("exact bridge reliability with the worked subsystem values") {
    Network net = bridge();
    ReliabilityResult res = exact_reliability(net, kWorkedRels);
    CHECK(res.connected_vectors == 8);
    CHECK(res.enumerated_vectors == 16);
    // the five-decimal published sum is 0.99553 (rounded termwise); the exact
    // sum of the same eight products is a hair above it
    CHECK(res.value == doctest::Approx(0.9955450178).epsilon(1e-9));
    CHECK(res.value == doctest::Approx(brute_force_reliability(net, kWorkedRels)).epsilon(1e-14));
}

TEST_CASE("all-up and all-down reliabilities") {
    Network net = bridge();
    CHECK(exact_reliability(net, std::vector<double>(6, 1.0)).value == 1.0);
    CHECK(brute_force_reliability(net, std::vector<double>(6, 0.0)) == 0.0);
}

TEST_CASE("two-node brute force is the product of terminal reliabilities") {
    Network two = parse_network("nodes 2\nsource 1\nsink 2\nedge 1 2\n");
    CHECK(brute_force_reliability(two, {0.9, 0.8}) == doctest::Approx(0.72).epsilon(1e-15));
}

TEST_CASE("bridge at uniform 0.9 agrees with the brute-force oracle") {
    Network net = bridge();
    std::vector<double> rels(6, 0.9);
    CHECK(std::abs(exact_reliability(net, rels).value - brute_force_reliability(net, rels)) <=
          1e-12);
}

TEST_CASE("oracle equivalence on random networks") {
    std::mt19937_64 rng(40712);
    auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    for (int rep = 0; rep < 40; ++rep) {
        int m = 4 + static_cast<int>(rng() % 7);
        Network net = random_network(rng, m);
        std::vector<double> rels(m);
        for (auto& r : rels) r = u01();
        ReliabilityResult res = exact_reliability(net, rels);
        CHECK(std::abs(res.value - brute_force_reliability(net, rels)) <= 1e-12);
        CHECK(res.enumerated_vectors == (std::uint64_t{1} << (m - 2)));
        CHECK(res.connected_vectors <= res.enumerated_vectors);
    }
}

TEST_CASE("np filter never discards a connected vector") {
    std::mt19937_64 rng(515);
    for (int rep = 0; rep < 25; ++rep) {
        int m = 4 + static_cast<int>(rng() % 5);
        Network net = random_network(rng, m);
        int np = min_path_node_count(net);
        for (const auto& x : enumerate_state_vectors(net)) {
            REQUIRE(x[net.source] == 1);
            REQUIRE(x[net.sink] == 1);
            int active = 0;
            for (auto b : x) active += b;
            if (active < np) CHECK_FALSE(is_connected(net, x));
        }
    }
}

TEST_CASE("layered search agrees with plain reachability on all state vectors") {
    std::mt19937_64 rng(90210);
    for (int rep = 0; rep < 25; ++rep) {
        int m = 4 + static_cast<int>(rng() % 5);
        Network net = random_network(rng, m);
        for (const auto& x : enumerate_state_vectors(net))
            CHECK(is_connected(net, x) == bfs_oracle(net, x));
    }
}

TEST_CASE("full-state probabilities sum to one") {
    std::mt19937_64 rng(1999);
    auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    for (int rep = 0; rep < 10; ++rep) {
        int m = 4 + static_cast<int>(rng() % 5);
        std::vector<double> rels(m);
        for (auto& r : rels) r = u01();
        detail::KahanSum sum;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
            NodeStateVector x(m);
            for (int j = 0; j < m; ++j) x[j] = (mask >> j) & 1;
            sum.add(state_probability(x, rels));
        }
        CHECK(std::abs(sum.sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("raising one node's reliability never lowers system reliability") {
    std::mt19937_64 rng(224);
    auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    for (int rep = 0; rep < 20; ++rep) {
        int m = 4 + static_cast<int>(rng() % 5);
        Network net = random_network(rng, m);
        std::vector<double> rels(m);
        for (auto& r : rels) r = u01();
        double base = exact_reliability(net, rels).value;
        for (int j = 0; j < m; ++j) {
            std::vector<double> bumped = rels;
            bumped[j] = std::min(1.0, bumped[j] + (1.0 - bumped[j]) * u01());
            CHECK(exact_reliability(net, bumped).value >= base - 1e-15);
        }
    }
}

TEST_CASE("monte carlo estimate brackets the exact value and is reproducible") {
    Network net = bridge();
    double exact = exact_reliability(net, kWorkedRels).value;
    auto mc = monte_carlo_reliability(net, kWorkedRels, 1'000'000, 20250810);
    CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error);
    auto mc2 = monte_carlo_reliability(net, kWorkedRels, 1'000'000, 20250810);
    CHECK(mc.estimate == mc2.estimate);
    CHECK(mc.std_error == mc2.std_error);

    auto sure = monte_carlo_reliability(net, std::vector<double>(6, 1.0), 1000, 7);
    CHECK(sure.estimate == 1.0);
    CHECK(sure.std_error == 0.0);
}
