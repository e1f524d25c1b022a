#pragma once

#include <stdexcept>
#include <string>

namespace morse_gpe {

// Argument outside the mathematical domain of a function (x <= 0 for ln_gamma, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Problem instance outside the region where the variational treatment holds (k < 2).
class ValidityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed call: bad range, empty grid, step out of bounds.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), residual_(last_residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace morse_gpe
