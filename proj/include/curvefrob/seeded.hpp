#pragma once

#include <cstdint>

#include "curvefrob/rational.hpp"

namespace curvefrob {

// splitmix64; identical stream on every platform, which the byte-determinism
// contract of the CLI depends on.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], both inclusive
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational next_rational(int lo, int hi) {
        int num = next_int(lo, hi);
        int den = next_int(1, hi > 1 ? hi : 1);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

  private:
    std::uint64_t state_;
};

}  // namespace curvefrob
