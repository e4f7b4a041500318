#pragma once

#include <cstdint>
#include <random>

#include "jetscheme/rational.hpp"

namespace jetscheme {

/// Seeded source of pseudorandom coefficients. Uses raw mt19937_64 output only, so the
/// sequence is identical across standard library implementations.
class SeededRandom {
public:
    explicit SeededRandom(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    /// Integer in [lo, hi].
    long integer(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(engine_() % span);
    }

    /// Nonzero integer in [-range, range].
    long nonzero(long range) {
        long v = integer(1, range);
        return (engine_() & 1U) ? v : -v;
    }

    /// Nonzero rational a/b with |a| <= range, 1 <= b <= den_range.
    Rational nonzero_rational(long range, long den_range = 1) {
        long a = nonzero(range);
        long b = integer(1, den_range);
        return Rational(Integer(a), Integer(b));
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace jetscheme
