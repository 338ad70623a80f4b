#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mkdv {

// Field passed to the periodic antiderivative has a nonzero mean, so it is
// outside the domain of the inverse derivative.
struct MeanNotZeroError : std::domain_error {
    using std::domain_error::domain_error;
};

// All-zero field where a nontrivial one is required (parameter estimation).
struct ZeroFieldError : std::domain_error {
    using std::domain_error::domain_error;
};

// Non-finite value encountered during time stepping; carries the abort time
// and the recent sup-norm history so blow-up can be reported.
struct NonFiniteError : std::runtime_error {
    double t = 0.0;
    std::vector<std::pair<double, double>> sup_history;  // (t, max|u|)

    explicit NonFiniteError(const std::string& msg) : std::runtime_error(msg) {}
    NonFiniteError(const std::string& msg, double t_,
                   std::vector<std::pair<double, double>> history)
        : std::runtime_error(msg), t(t_), sup_history(std::move(history)) {}
};

// Iterative procedure (Newton fit, eigenvalue iteration) failed to reach its
// tolerance; the residual history is attached for post-mortem.
struct NoConvergenceError : std::runtime_error {
    std::vector<double> residual_history;

    explicit NoConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
    NoConvergenceError(const std::string& msg, std::vector<double> history)
        : std::runtime_error(msg), residual_history(std::move(history)) {}
};

// Scale parameter c fell to the floor where the modulation ODEs degenerate.
struct ScaleCollapseError : std::runtime_error {
    double t = 0.0;
    double c = 0.0;

    ScaleCollapseError(const std::string& msg, double t_, double c_)
        : std::runtime_error(msg), t(t_), c(c_) {}
};

}  // namespace mkdv
