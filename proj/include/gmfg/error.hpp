#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmfg {

enum class ErrorCode {
    invalid_params,
    domain_error,
    a1_violation,
    a3_violation,
    asymmetric_matrix,
    entry_out_of_range,
    rank_zero,
    orthonormality_violation,
    range_violation,
    size_mismatch,
    negative_time,
    profile_too_short,
    step_function_graphon,
    invalid_sizes,
    grid_mismatch,
    unstable_step,
    config_error,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace gmfg
