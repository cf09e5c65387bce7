#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace becgw {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A quantity left the domain where the formula is meaningful
/// (non-positive-definite covariance, log of a non-positive number, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// An intermediate value became non-finite. Raised instead of letting
/// Inf/NaN propagate silently.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

/// Adaptive ODE integration could not make progress. Carries the time at
/// which the step size underflowed.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& msg, double t) : Error(msg), time_of_failure(t) {}
    double time_of_failure;
};

/// Two-exponential fit residual exceeded its threshold, which signals that
/// the driving window had not closed over the fitted samples.
class FitResidualError : public Error {
public:
    FitResidualError(const std::string& msg, double res) : Error(msg), residual(res) {}
    double residual;
};

/// An iterative estimate failed its convergence test. Carries the two
/// trial values so the caller can see how far apart they were.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double a, double b)
        : Error(msg), estimate_coarse(a), estimate_fine(b) {}
    double estimate_coarse;
    double estimate_fine;
};

/// Adaptive quadrature did not reach the requested relative error.
class QuadratureError : public Error {
public:
    explicit QuadratureError(const std::string& msg) : Error(msg) {}
};

/// Configuration document failed validation. Collects every violation,
/// not just the first one found.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> problems)
        : Error(join(problems)), violations(std::move(problems)) {}
    std::vector<std::string> violations;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "configuration invalid:";
        for (const auto& s : v) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }
};

/// Filesystem failure; message echoes the offending path.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace becgw
