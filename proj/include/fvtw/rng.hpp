#pragma once

#include <cstdint>

namespace fvtw {

// splitmix64; self-contained so seeded runs reproduce across platforms
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    uint64_t next_below(uint64_t bound) { return bound ? next_u64() % bound : 0; }

    int next_int(int lo, int hi) { return lo + static_cast<int>(next_below(static_cast<uint64_t>(hi - lo + 1))); }

    double next_double() { return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0); }

    bool next_bool(double p) { return next_double() < p; }

private:
    uint64_t state_;
};

} // namespace fvtw
