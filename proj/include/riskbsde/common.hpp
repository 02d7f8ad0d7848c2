#pragma once

#include <stdexcept>
#include <string>

namespace riskbsde {

// Thrown when inputs (config, arguments, declared model data) are rejected
// before any numerics run. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a solver aborts mid-computation (ill-conditioned regression,
// CFL refusal, non-finite values). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riskbsde
