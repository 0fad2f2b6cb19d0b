#pragma once

#include <cstdint>
#include <random>

namespace grrap {

// splitmix64 finalizer; spreads consecutive seeds into well-separated states.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// One deterministic stream per optimization run. Results depend only on the
// seed, never on scheduling. Draw order is part of the reproducibility
// contract and is documented at each call site in the optimizers:
//   init:      per particle, counts segment first (one index draw, or one
//              integer draw per coordinate), then one draw per reliability.
//   each gen:  per particle, count-update selectors (plus any resample), then
//              per reliability coordinate its selector, one raw draw used as
//              the perturbation, and a resample only when out of bounds.
class RunRng {
public:
    explicit RunRng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    // uniform in [0,1), 53-bit resolution
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi], unbiased
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(bounded(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // uniform index in [0, n)
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(bounded(n)); }

private:
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t r = engine_();
        while (r >= limit) r = engine_();  // rejection keeps the draw unbiased
        return r % n;
    }

    std::mt19937_64 engine_;
};

}  // namespace grrap
