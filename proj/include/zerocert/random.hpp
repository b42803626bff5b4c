#pragma once

#include <cstdint>
#include <random>

#include "zerocert/common.hpp"

namespace zerocert {

/// mt19937_64 with a fixed bits-to-double map, so draws are identical across
/// standard libraries (std::uniform_real_distribution is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform on the disk of radius r about c.
    Complex in_disk(Complex c, double r) {
        const double rho = r * std::sqrt(uniform());
        return c + std::polar(rho, kTwoPi * uniform());
    }

private:
    std::mt19937_64 engine_;
};

} // namespace zerocert
