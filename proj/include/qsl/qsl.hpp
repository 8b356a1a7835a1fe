#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qsl/jc.hpp"
#include "qsl/trajectory.hpp"

namespace qsl {

// All times at which Theta_R(rho_t, rho_0) crosses a target angle.
struct TimeSet {
    std::vector<double> crossing_times;  // increasing; front() is tau_hat
};

enum class NormFlavor { op, tr, hs };

// One run's worth of QSL quantities.
struct BoundReport {
    double theta_r = 0.0;       // target angle at the driving time
    double tau_driving = 0.0;
    double tau_hat = 0.0;
    std::optional<double> tau_hat_m;  // empty when unattained in the window
    double bound_final1 = 0.0;  // time-averaged denominator over [0, tau]
    double bound_max = 0.0;     // beta = 1
    double bound_beta = 0.0;    // at `beta`
    double beta = 1.0;
    double bound_previous = 0.0;
    double non_markovianity = 0.0;
};

// Theta_R(t) = arccos F_R(rho_t, rho_0) on the trajectory grid.
std::vector<double> theta_r_of_t(const Trajectory& traj);

// All crossings of Theta_R(t) = target (linear interpolation between grid
// samples); tau_hat is the earliest. Throws unattained_target if the target
// angle is never reached.
std::pair<TimeSet, double> minimal_evolution_time(const Trajectory& traj, double target_theta);

// Earliest time attaining the global maximum of Theta_R. Empty when the
// curve is still rising at the window end (weak coupling: tau_hat_M -> inf).
std::optional<double> tau_hat_m(const Trajectory& traj);

// Trapezoidal time average of a stored series over [0, tau].
double time_average(const Trajectory& traj, const std::vector<double>& series, double tau);

// Grid max with three-point parabolic refinement at the discrete argmax.
double series_max(const std::vector<double>& times, const std::vector<double>& values);

// ||rho_0||_HS sin^2(theta) / [ <||H||_Delta>_tau / 2 + <||D||_op>_tau ]
double bound_final1(const Trajectory& traj, double tau, double theta);

// ||rho_0||_HS sin^2(theta) / [ <||H||_Delta>_tau_hat / 2 + beta max ||D||_op ]
double bound_final2(const Trajectory& traj, double tau_hat_window, double theta, double beta);

// <||D||_op>_tau_hat / max ||D||_op, clamped to (0, 1]
double beta_estimate(const Trajectory& traj, double tau_hat);

// The cited pure-state comparison bound: sin^2(Theta_B) / <||L_t||>_tau,
// with the full generator L_t and a selectable Schatten flavor.
double bound_previous(const Trajectory& traj, double tau, NormFlavor flavor = NormFlavor::op);

// BLP non-Markovianity for the JC amplitude-damping channel; the optimal
// antipodal pair gives trace distance |G(t)|^2, so N is the sum of its
// revival rises. Exactly 0 for gamma0 <= lambda/2.
double blp_non_markovianity(const JCParams& params, double t_window);

} // namespace qsl
