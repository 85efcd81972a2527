#pragma once

#include <cstdint>
#include <vector>

#include "xact/rat.hpp"

namespace xact {

/// splitmix64: deterministic across platforms, used for all seeded suites.
/// Standard-library distributions are implementation-defined, so sampling is
/// done by plain modulo here; bias is irrelevant for test-case generation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    /// Uniform-ish in [lo, hi] inclusive.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1; }

    /// Small exact rational: numerator in [-bound, bound], denominator mostly 1.
    Rat rat(long long bound = 9) {
        long long num = int_in(-bound, bound);
        long long den = 1;
        std::uint64_t roll = below(5);
        if (roll == 3) den = 2;
        if (roll == 4) den = 3;
        return Rat(num, den);
    }

    /// Derived stream so parallel checks stay schedule-independent.
    Rng spawn(std::uint64_t index) const {
        Rng r(s_ ^ (0xa0761d6478bd642full * (index + 1)));
        r.next();
        return r;
    }

private:
    std::uint64_t s_;
};

}  // namespace xact
