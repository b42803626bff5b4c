#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace zerocert {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
    invalid_parameter,
    indeterminate_count,
    pole_at_origin,
    tolerance_failure,
    out_of_domain,
    precondition_violation,
    invalid_kernel,
    invalid_potential,
    invalid_setup,
    genus_overflow,
    unsupported,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when adaptive refinement cannot reach the requested absolute tolerance.
class ToleranceFailure : public Error {
public:
    ToleranceFailure(const std::string& what, double residual)
        : Error(ErrorCode::tolerance_failure, what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Real number extended by the two infinities. Infinite values are carried in
/// the tag, never as an IEEE infinity in `value_`.
class ExtendedReal {
public:
    enum class Kind : std::uint8_t { finite, plus_infinity, minus_infinity };

    constexpr ExtendedReal() = default;

    // Accepts IEEE infinities at the boundary and converts them to the tag.
    constexpr ExtendedReal(double v) // NOLINT(google-explicit-constructor)
        : kind_(v == kInf ? Kind::plus_infinity : (v == -kInf ? Kind::minus_infinity : Kind::finite)),
          value_(kind_ == Kind::finite ? v : 0.0) {}

    static constexpr ExtendedReal plus_infinity() { return ExtendedReal(Kind::plus_infinity); }
    static constexpr ExtendedReal minus_infinity() { return ExtendedReal(Kind::minus_infinity); }

    constexpr Kind kind() const { return kind_; }
    constexpr bool is_finite() const { return kind_ == Kind::finite; }
    constexpr bool is_plus_infinity() const { return kind_ == Kind::plus_infinity; }
    constexpr bool is_minus_infinity() const { return kind_ == Kind::minus_infinity; }

    double value() const {
        if (!is_finite()) throw Error(ErrorCode::precondition_violation, "value() of an infinite extended real");
        return value_;
    }

    // IEEE view for numeric consumers such as quadrature loops.
    constexpr double to_double() const {
        switch (kind_) {
        case Kind::plus_infinity: return kInf;
        case Kind::minus_infinity: return -kInf;
        default: return value_;
        }
    }

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.kind_ == b.kind_ && a.value_ == b.value_;
    }

private:
    constexpr explicit ExtendedReal(Kind k) : kind_(k) {}

    Kind kind_ = Kind::finite;
    double value_ = 0.0;
};

/// Natural number extended by +infinity, used by counting measures.
class ExtendedCount {
public:
    constexpr ExtendedCount() = default;
    constexpr explicit ExtendedCount(std::uint64_t n) : value_(n) {}
    static constexpr ExtendedCount infinity() {
        ExtendedCount c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const { return infinite_; }
    std::uint64_t value() const {
        if (infinite_) throw Error(ErrorCode::precondition_violation, "value() of an infinite count");
        return value_;
    }

    friend constexpr bool operator==(const ExtendedCount& a, const ExtendedCount& b) {
        return a.infinite_ == b.infinite_ && a.value_ == b.value_;
    }

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

} // namespace zerocert
