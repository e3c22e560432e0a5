#include "gmfg/error.hpp"

namespace gmfg {

std::string_view code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_params: return "invalid-params";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::a1_violation: return "a1-violation";
    case ErrorCode::a3_violation: return "a3-violation";
    case ErrorCode::asymmetric_matrix: return "asymmetric-matrix";
    case ErrorCode::entry_out_of_range: return "entry-out-of-range";
    case ErrorCode::rank_zero: return "rank-zero";
    case ErrorCode::orthonormality_violation: return "orthonormality-violation";
    case ErrorCode::range_violation: return "range-violation";
    case ErrorCode::size_mismatch: return "size-mismatch";
    case ErrorCode::negative_time: return "negative-time";
    case ErrorCode::profile_too_short: return "profile-too-short";
    case ErrorCode::step_function_graphon: return "step-function-graphon";
    case ErrorCode::invalid_sizes: return "invalid-sizes";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::unstable_step: return "unstable-step";
    case ErrorCode::config_error: return "config-error";
    }
    return "unknown";
}

} // namespace gmfg
