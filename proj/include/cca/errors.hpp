// errors.hpp: exception types raised by the numerical core

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cca {

// Raised when a computation cannot produce a trustworthy result
// (non-convergence, norm blowup, integrator instability).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, std::size_t index)
        : NumericalError(what + " (index " + std::to_string(index) + ")"), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

} // namespace cca
