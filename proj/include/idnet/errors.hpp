#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idnet {

// Bad user input: malformed files, invariant violations, infeasible configs.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A model invariant failed (singular system, negative equilibrium action).
// Never caused by user input.
class ModelInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations, double residual)
        : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

} // namespace idnet
