#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grrap {

// Malformed input text (carries a line number where possible).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally invalid object (bad bounds, unreachable sink, ...).
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Problem size exceeds what an exact method can enumerate.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline int to_int(std::string_view tok, int line_no) {
    int value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw parse_error("line " + std::to_string(line_no) + ": expected integer, got '" +
                          std::string(tok) + "'");
    return value;
}

inline double to_double(std::string_view tok, int line_no) {
    std::string buf(tok);
    char* end = nullptr;
    double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        throw parse_error("line " + std::to_string(line_no) + ": expected number, got '" +
                          buf + "'");
    return value;
}

}  // namespace detail

// Directed activity-on-node network: each node is a subsystem carrying its own
// reliability, arcs never fail. Indices are 0-based in memory and 1-based in
// files. Undirected links are modeled by listing both arc directions.
struct Network {
    int node_count = 0;
    int source = 0;
    int sink = 0;
    std::vector<std::pair<int, int>> edges;  // arcs, kept in input order
    std::vector<std::vector<int>> out;       // adjacency, built by validate()

    Network() = default;
    Network(int m, int src, int snk, std::vector<std::pair<int, int>> arcs)
        : node_count(m), source(src), sink(snk), edges(std::move(arcs)) {
        validate();
    }

    bool operator==(const Network& o) const {
        return node_count == o.node_count && source == o.source && sink == o.sink &&
               edges == o.edges;
    }

    // Checks invariants and rebuilds the adjacency lists. Throws validation_error.
    void validate() {
        if (node_count < 2) throw validation_error("network needs at least 2 nodes");
        if (source < 0 || source >= node_count) throw validation_error("source index out of range");
        if (sink < 0 || sink >= node_count) throw validation_error("sink index out of range");
        if (source == sink) throw validation_error("source and sink must differ");
        out.assign(node_count, {});
        std::vector<std::int64_t> keys;
        keys.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u < 0 || u >= node_count || v < 0 || v >= node_count)
                throw validation_error("edge endpoint out of range");
            if (u == v) throw validation_error("self-loop on node " + std::to_string(u + 1));
            keys.push_back(static_cast<std::int64_t>(u) * node_count + v);
            out[u].push_back(v);
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
            throw validation_error("duplicate edge");
        if (!fully_up_connected())
            throw validation_error("sink is not reachable from source");
    }

private:
    bool fully_up_connected() const {
        std::vector<char> seen(node_count, 0);
        std::vector<int> stack{source};
        seen[source] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (u == sink) return true;
            for (int v : out[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        return false;
    }
};

// Line format: `nodes <m>`, `source <i>`, `sink <i>`, `edge <u> <v>`;
// `#` starts a comment.
inline Network parse_network(const std::string& text) {
    Network net;
    bool have_nodes = false, have_source = false, have_sink = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        auto expect = [&](std::size_t n) {
            if (toks.size() != n)
                throw parse_error("line " + std::to_string(line_no) + ": malformed '" +
                                  std::string(toks[0]) + "' line");
        };
        if (toks[0] == "nodes") {
            expect(2);
            net.node_count = detail::to_int(toks[1], line_no);
            if (net.node_count < 2)
                throw parse_error("line " + std::to_string(line_no) + ": need at least 2 nodes");
            have_nodes = true;
        } else if (toks[0] == "source") {
            expect(2);
            net.source = detail::to_int(toks[1], line_no) - 1;
            have_source = true;
        } else if (toks[0] == "sink") {
            expect(2);
            net.sink = detail::to_int(toks[1], line_no) - 1;
            have_sink = true;
        } else if (toks[0] == "edge") {
            expect(3);
            if (!have_nodes)
                throw parse_error("line " + std::to_string(line_no) +
                                  ": 'nodes' must precede 'edge'");
            int u = detail::to_int(toks[1], line_no);
            int v = detail::to_int(toks[2], line_no);
            if (u < 1 || u > net.node_count || v < 1 || v > net.node_count)
                throw parse_error("line " + std::to_string(line_no) + ": edge endpoint " +
                                  std::to_string(std::max(u, v)) + " outside 1.." +
                                  std::to_string(net.node_count));
            net.edges.emplace_back(u - 1, v - 1);
        } else {
            throw parse_error("line " + std::to_string(line_no) + ": unknown directive '" +
                              std::string(toks[0]) + "'");
        }
    }
    if (!have_nodes) throw parse_error("missing 'nodes' line");
    if (!have_source) throw parse_error("missing 'source' line");
    if (!have_sink) throw parse_error("missing 'sink' line");
    net.validate();
    return net;
}

inline std::string serialize_network(const Network& net) {
    std::string out;
    out += "nodes " + std::to_string(net.node_count) + "\n";
    out += "source " + std::to_string(net.source + 1) + "\n";
    out += "sink " + std::to_string(net.sink + 1) + "\n";
    for (auto [u, v] : net.edges)
        out += "edge " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return out;
}

// Number of nodes on a shortest source-to-sink path (node count, not hops),
// found by breadth-first layering. State vectors activating fewer nodes can
// never be connected.
inline int min_path_node_count(const Network& net) {
    std::vector<int> dist(net.node_count, 0);
    dist[net.source] = 1;
    std::vector<int> frontier{net.source};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier) {
            if (u == net.sink) return dist[u];
            for (int v : net.out[u])
                if (dist[v] == 0) {
                    dist[v] = dist[u] + 1;
                    next.push_back(v);
                }
        }
        frontier.swap(next);
    }
    throw validation_error("sink unreachable; network was not validated");
}

}  // namespace grrap
