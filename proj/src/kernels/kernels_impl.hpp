#pragma once

#include <span>

#include "zerocert/kernels.hpp"

namespace zerocert::kernels {

namespace scalar {
double sum_positive_part(std::span<const double> x, double shift);
double sum_capped_log(std::span<const double> x, double shift, double eps);
PrimarySum sum_log_primary(std::span<const double> inv_re, std::span<const double> inv_im, Complex z, int genus);
// Single term of the primary-factor sum; shared by the vector tails.
double log_primary_term(double ur, double ui, int genus);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define ZEROCERT_HAVE_AVX2_KERNELS 1
namespace avx2 {
double sum_positive_part(std::span<const double> x, double shift);
double sum_capped_log(std::span<const double> x, double shift, double eps);
PrimarySum sum_log_primary(std::span<const double> inv_re, std::span<const double> inv_im, Complex z, int genus);
} // namespace avx2
#endif

} // namespace zerocert::kernels
