#pragma once

#include <stdexcept>
#include <string>

namespace spectralgof {

/// Malformed or inconsistent input data (bad files, wrong node counts,
/// graphs that cannot be normalized). Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical pathology: eigensolver or power-iteration non-convergence,
/// undefined ratios. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid model or run parameters supplied by the caller. Maps to CLI
/// exit code 1 (usage).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace spectralgof
