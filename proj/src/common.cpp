#include "zerocert/common.hpp"

namespace zerocert {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::indeterminate_count: return "indeterminate-count";
    case ErrorCode::pole_at_origin: return "pole-at-origin";
    case ErrorCode::tolerance_failure: return "tolerance-failure";
    case ErrorCode::out_of_domain: return "out-of-domain";
    case ErrorCode::precondition_violation: return "precondition-violation";
    case ErrorCode::invalid_kernel: return "invalid-kernel";
    case ErrorCode::invalid_potential: return "invalid-potential";
    case ErrorCode::invalid_setup: return "invalid-setup";
    case ErrorCode::genus_overflow: return "genus-overflow";
    case ErrorCode::unsupported: return "unsupported";
    }
    return "unknown";
}

} // namespace zerocert
