#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace zerocert::kernels {
namespace {

// -1: no override; otherwise the Isa value.
std::atomic<int> g_override{-1};

bool cpu_has_avx2() {
#ifdef ZEROCERT_HAVE_AVX2_KERNELS
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa checked(Isa isa) {
    if (!available(isa)) throw Error(ErrorCode::unsupported, std::string("ISA not available: ") + to_string(isa));
    return isa;
}

} // namespace

const char* to_string(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool available(Isa isa) {
    if (isa == Isa::scalar) return true;
    static const bool avx2 = cpu_has_avx2();
    return avx2;
}

Isa best_available() { return available(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active() {
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced >= 0) return static_cast<Isa>(forced);
    if (const char* env = std::getenv("ZEROCERT_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && available(Isa::avx2)) return Isa::avx2;
    }
    return best_available();
}

void set_override(std::optional<Isa> isa) {
    if (isa) checked(*isa);
    g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

double sum_positive_part(std::span<const double> x, double shift, Isa isa) {
#ifdef ZEROCERT_HAVE_AVX2_KERNELS
    if (checked(isa) == Isa::avx2) return avx2::sum_positive_part(x, shift);
#endif
    return scalar::sum_positive_part(x, shift);
}

double sum_capped_log(std::span<const double> x, double shift, double eps, Isa isa) {
#ifdef ZEROCERT_HAVE_AVX2_KERNELS
    if (checked(isa) == Isa::avx2) return avx2::sum_capped_log(x, shift, eps);
#endif
    return scalar::sum_capped_log(x, shift, eps);
}

PrimarySum sum_log_primary(std::span<const double> inv_re, std::span<const double> inv_im, Complex z, int genus,
                           Isa isa) {
    if (inv_re.size() != inv_im.size()) throw Error(ErrorCode::invalid_parameter, "mismatched reciprocal arrays");
    if (genus < 0) throw Error(ErrorCode::invalid_parameter, "negative genus");
#ifdef ZEROCERT_HAVE_AVX2_KERNELS
    if (checked(isa) == Isa::avx2) return avx2::sum_log_primary(inv_re, inv_im, z, genus);
#endif
    return scalar::sum_log_primary(inv_re, inv_im, z, genus);
}

} // namespace zerocert::kernels
