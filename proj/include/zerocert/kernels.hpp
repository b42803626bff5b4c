#pragma once

// Data-parallel inner loops behind the counting sums and the Weierstrass
// product. Each kernel has a scalar reference and an AVX2 variant; the
// variant is picked at runtime and both are equivalence-tested.

#include <optional>
#include <span>

#include "zerocert/common.hpp"

namespace zerocert::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

/// True when the CPU and the build both support `isa`.
bool available(Isa isa);

/// Best ISA available on this machine.
Isa best_available();

/// ISA used by default: the process-wide override if set, else ZEROCERT_ISA
/// ("scalar" or "avx2") when it names an available ISA, else best_available().
Isa active();

/// Process-wide override, mainly for tests and benchmarks.
void set_override(std::optional<Isa> isa);

/// Smooth capped-log profile: 0 on (-inf, -eps], s on [eps, inf), and a
/// convex C^3 quintic-smoothstep blend in between. eps == 0 gives max(s, 0).
double capped_log_profile(double s, double eps);

/// sum_i max(0, shift - x[i])
double sum_positive_part(std::span<const double> x, double shift, Isa isa = active());

/// sum_i capped_log_profile(shift - x[i], eps)
double sum_capped_log(std::span<const double> x, double shift, double eps, Isa isa = active());

struct PrimarySum {
    double log_abs = 0.0;   // sum_j ln|E_p(z w_j)|
    double min_dist2 = kInf; // min_j |z - 1/w_j|^2
};

/// Sum of ln|E_p(z w_j)| with E_p(u) = (1-u) exp(u + ... + u^p/p), for
/// reciprocal zeros w_j = 1/z_j given as split real/imaginary arrays.
/// For |u| <= 1/2 the series -sum_{k>p} Re(u^k)/k is used.
PrimarySum sum_log_primary(std::span<const double> inv_re, std::span<const double> inv_im,
                           Complex z, int genus, Isa isa = active());

} // namespace zerocert::kernels
