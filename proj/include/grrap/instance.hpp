#pragma once

#include "grrap/network.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace grrap {

namespace detail {

// Shortest decimal representation that round-trips the double.
inline std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), p);
}

// Parse `token * 10^shift` exactly: the exponent is adjusted in the decimal
// text before a single correctly-rounded strtod, so scale/unscale round-trips
// bit-for-bit (multiplying the parsed double by 1e-5 would not).
inline double parse_scaled(std::string_view token, int shift, int line_no) {
    std::string s(token);
    auto epos = s.find_first_of("eE");
    int exp = 0;
    if (epos != std::string::npos) {
        exp = to_int(std::string_view(s).substr(epos + 1), line_no);
        s.resize(epos);
    }
    if (s.empty()) throw parse_error("line " + std::to_string(line_no) + ": bad number");
    s += "e" + std::to_string(exp + shift);
    return to_double(s, line_no);
}

inline std::string format_scaled(double x, int shift) {
    std::string s = format_double(x);
    auto epos = s.find_first_of("eE");
    int exp = 0;
    if (epos != std::string::npos) {
        exp = std::stoi(s.substr(epos + 1));
        s.resize(epos);
    }
    exp += shift;
    if (exp != 0) s += "e" + std::to_string(exp);
    return s;
}

}  // namespace detail

// Cost/volume/weight coefficients of one subsystem. `alpha` is stored already
// scaled: data tables list alpha x 1e5.
struct SubsystemParams {
    double alpha = 0.0;
    double beta = 0.0;
    double wv2 = 0.0;  // w_i * v_i^2
    double w = 0.0;
    bool operator==(const SubsystemParams&) const = default;
};

struct ProblemInstance {
    Network network;
    std::vector<SubsystemParams> params;
    double cost_limit = 0.0;
    double volume_limit = 0.0;
    double weight_limit = 0.0;
    std::vector<int> count_lb, count_ub;
    std::vector<double> rel_lb, rel_ub;

    int size() const { return network.node_count; }
    bool operator==(const ProblemInstance&) const = default;

    void validate() const {
        const std::size_t m = static_cast<std::size_t>(network.node_count);
        if (params.size() != m) throw validation_error("subsystem count mismatch");
        if (count_lb.size() != m || count_ub.size() != m || rel_lb.size() != m ||
            rel_ub.size() != m)
            throw validation_error("bounds vector length mismatch");
        for (std::size_t i = 0; i < m; ++i) {
            const auto& p = params[i];
            if (!(p.alpha > 0) || !(p.beta > 0) || !(p.wv2 > 0) || !(p.w > 0))
                throw validation_error("non-positive parameter in subsystem " +
                                       std::to_string(i + 1));
            if (count_lb[i] < 1 || count_lb[i] > count_ub[i])
                throw validation_error("inverted or sub-unit count bounds in subsystem " +
                                       std::to_string(i + 1));
            if (!(rel_lb[i] > 0.0) || !(rel_lb[i] < rel_ub[i]) || !(rel_ub[i] < 1.0))
                throw validation_error("reliability bounds must satisfy 0 < lb < ub < 1 "
                                       "in subsystem " + std::to_string(i + 1));
        }
        if (!(cost_limit > 0) || !(volume_limit > 0) || !(weight_limit > 0))
            throw validation_error("resource limits must be positive");
    }
};

// Two-segment solution vector: component counts first, component
// reliabilities second.
struct Solution {
    std::vector<int> counts;
    std::vector<double> rels;
    bool operator==(const Solution&) const = default;
};

// Line format: `subsystems <m>`, per row `sub <i> alpha <a> beta <b> wv2 <x> w <y>`
// (alpha is given x1e5, as in the data tables), `limits C <c> V <v> W <w>`, and
// optional uniform `nbounds <lb> <ub>` / `rbounds <lb> <ub>`. Defaults:
// n in [1,5], r in [0.5, 1-1e-6].
inline ProblemInstance parse_instance(const std::string& text, const Network& net) {
    ProblemInstance inst;
    inst.network = net;
    const int m = net.node_count;
    inst.params.resize(m);
    std::vector<char> seen(m, 0);
    inst.count_lb.assign(m, 1);
    inst.count_ub.assign(m, 5);
    inst.rel_lb.assign(m, 0.5);
    inst.rel_ub.assign(m, 1.0 - 1e-6);
    bool have_count = false, have_limits = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        auto fail = [&](const std::string& why) -> void {
            throw parse_error("line " + std::to_string(line_no) + ": " + why);
        };
        if (toks[0] == "subsystems") {
            if (toks.size() != 2) fail("malformed 'subsystems' line");
            int count = detail::to_int(toks[1], line_no);
            if (count != m)
                throw validation_error("instance declares " + std::to_string(count) +
                                       " subsystems but network has " + std::to_string(m));
            have_count = true;
        } else if (toks[0] == "sub") {
            if (toks.size() != 10 || toks[2] != "alpha" || toks[4] != "beta" ||
                toks[6] != "wv2" || toks[8] != "w")
                fail("expected 'sub <i> alpha <a> beta <b> wv2 <x> w <y>'");
            int idx = detail::to_int(toks[1], line_no);
            if (idx < 1 || idx > m) fail("subsystem index outside 1.." + std::to_string(m));
            if (seen[idx - 1]) fail("duplicate subsystem " + std::string(toks[1]));
            seen[idx - 1] = 1;
            auto& p = inst.params[idx - 1];
            p.alpha = detail::parse_scaled(toks[3], -5, line_no);
            p.beta = detail::to_double(toks[5], line_no);
            p.wv2 = detail::to_double(toks[7], line_no);
            p.w = detail::to_double(toks[9], line_no);
        } else if (toks[0] == "limits") {
            if (toks.size() != 7 || toks[1] != "C" || toks[3] != "V" || toks[5] != "W")
                fail("expected 'limits C <c> V <v> W <w>'");
            inst.cost_limit = detail::to_double(toks[2], line_no);
            inst.volume_limit = detail::to_double(toks[4], line_no);
            inst.weight_limit = detail::to_double(toks[6], line_no);
            have_limits = true;
        } else if (toks[0] == "nbounds") {
            if (toks.size() != 3) fail("expected 'nbounds <lb> <ub>'");
            inst.count_lb.assign(m, detail::to_int(toks[1], line_no));
            inst.count_ub.assign(m, detail::to_int(toks[2], line_no));
        } else if (toks[0] == "rbounds") {
            if (toks.size() != 3) fail("expected 'rbounds <lb> <ub>'");
            inst.rel_lb.assign(m, detail::to_double(toks[1], line_no));
            inst.rel_ub.assign(m, detail::to_double(toks[2], line_no));
        } else {
            fail("unknown directive '" + std::string(toks[0]) + "'");
        }
    }
    if (!have_count) throw parse_error("missing 'subsystems' line");
    if (!have_limits) throw parse_error("missing 'limits' line");
    for (int i = 0; i < m; ++i)
        if (!seen[i])
            throw parse_error("missing 'sub' row for subsystem " + std::to_string(i + 1));
    inst.validate();
    return inst;
}

inline std::string serialize_instance(const ProblemInstance& inst) {
    std::string out;
    out += "subsystems " + std::to_string(inst.size()) + "\n";
    for (int i = 0; i < inst.size(); ++i) {
        const auto& p = inst.params[i];
        out += "sub " + std::to_string(i + 1) + " alpha " + detail::format_scaled(p.alpha, 5) +
               " beta " + detail::format_double(p.beta) + " wv2 " + detail::format_double(p.wv2) +
               " w " + detail::format_double(p.w) + "\n";
    }
    out += "limits C " + detail::format_double(inst.cost_limit) + " V " +
           detail::format_double(inst.volume_limit) + " W " +
           detail::format_double(inst.weight_limit) + "\n";
    out += "nbounds " + std::to_string(inst.count_lb[0]) + " " +
           std::to_string(inst.count_ub[0]) + "\n";
    out += "rbounds " + detail::format_double(inst.rel_lb[0]) + " " +
           detail::format_double(inst.rel_ub[0]) + "\n";
    return out;
}

}  // namespace grrap
