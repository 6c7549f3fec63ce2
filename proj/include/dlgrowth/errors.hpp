#pragma once

#include <stdexcept>
#include <string>

namespace dlgrowth {

// Invalid inputs, parameters, or configuration. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: non-convergence, degenerate likelihoods, failed
// integrations. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ValidationError(what);
}

}  // namespace dlgrowth
