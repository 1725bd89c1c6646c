#pragma once

#include <cstdint>
#include <random>

namespace ccg {

// Deterministic across platforms: the mt19937_64 sequence is pinned by the
// standard and doubles are derived without distribution objects.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t bits() { return eng_(); }
    int index(int n) { return int(eng_() % std::uint64_t(n)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace ccg
