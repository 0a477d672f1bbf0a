#ifndef HOMOG_ERRORS_HPP
#define HOMOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace homog {

// Bad experiment configuration or a violated resolution rule.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller broke an operation precondition.
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Iterative solver failed to reach tolerance; carries the final residual.
struct solver_error : std::runtime_error {
    double residual;
    solver_error(const std::string& msg, double final_residual)
        : std::runtime_error(msg), residual(final_residual) {}
};

// Requested quadrature or radius is unresolvable on the given grid.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A quantity that must be nonzero (normalizer, denominator average) vanished.
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace homog

#endif
