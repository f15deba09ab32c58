#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpercol {

enum class ErrorKind {
    invalid_sequence,
    not_graphical,
    empty_input,
    repair_failure,
    imbalance,
    invalid_distribution,
    degree_mismatch,
    attempts_exhausted,
    zero_mean_degree,
    zero_mu11,
    out_of_range,
    max_iters_exceeded,
    parse_error,
    io_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace dpercol
