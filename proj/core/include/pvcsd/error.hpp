#pragma once

#include <stdexcept>
#include <string>

namespace pvcsd {

// Bad input: malformed files, out-of-range configuration, precondition
// violations. The CLI maps it to exit code 1.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A quantity is undefined for the given arguments (e.g. eta ratios with mu1 = 0).
class DomainError : public InputError {
public:
    using InputError::InputError;
};

// Numerical breakdown (loss of positive definiteness, singular systems).
// The CLI maps it to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws InputError when value is NaN or infinite.
void require_finite(double value, const char* what);

} // namespace pvcsd
