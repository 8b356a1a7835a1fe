#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

// Violation of a numerical contract (non-Hermitian input, broken invariant, ...).
// The CLI maps this to exit code 3.
class contract_violation : public std::runtime_error {
public:
    explicit contract_violation(const std::string& what) : std::runtime_error(what) {}
};

// Bad user-facing configuration (CLI / JSON). Maps to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested at (or too close to) a pole of gamma(t).
class singularity_error : public std::runtime_error {
public:
    singularity_error(const std::string& what, double pole_time)
        : std::runtime_error(what), pole(pole_time) {}
    double pole;
};

// Trajectory carries no dynamics, so a bound denominator vanishes.
class degenerate_evolution : public std::runtime_error {
public:
    explicit degenerate_evolution(const std::string& what) : std::runtime_error(what) {}
};

// Requested target angle is never reached within the trajectory window.
class unattained_target : public std::runtime_error {
public:
    unattained_target(const std::string& what, double max_theta_seen)
        : std::runtime_error(what), max_theta(max_theta_seen) {}
    double max_theta;
};

} // namespace qsl
