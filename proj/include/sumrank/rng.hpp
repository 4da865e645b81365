#pragma once

// Deterministic splitmix64-based generator. Trials get independent streams from
// (seed, trial index), so results do not depend on how work is split across
// workers or on the platform's distribution implementations.

#include <cstdint>

namespace sumrank {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
        r.next();
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n >= 1
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace sumrank
