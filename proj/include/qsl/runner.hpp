#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsl/config.hpp"

namespace qsl {

// Runs fn(0..n-1) on a worker pool of `jobs` threads; the first exception is
// rethrown on the caller's thread after all workers join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

struct SweepRow {
    double gamma0 = 0, lambda = 0, tau = 0;
    double theta_r = 0, tau_hat = 0;
    std::optional<double> tau_hat_m;
    double bound_previous = 0, bound_max = 0, bound_beta = 0, beta = 0;
    double non_markovianity = 0;
    double grid_dt = 0;  // interpolation tolerance scale for validity checks
};

std::vector<double> sweep_grid(const RunConfig& c);  // log-spaced gamma0 values
SweepRow jc_sweep_point(const RunConfig& c, double gamma0);
std::vector<SweepRow> jc_sweep(const RunConfig& c);  // parallel over grid points

struct DotSeedResult {
    std::uint64_t seed = 0;
    double theta_r = 0, tau_hat = 0;
    double bound_previous = 0;
    std::vector<double> bounds;            // bound_final2 per config beta, window [0, tau_hat]
    std::vector<double> bounds_tau_window; // same with <||H||_spread> over [0, tau]
    double beta_estimate = 0;
    double numerator = 0;   // ||rho0||_HS sin^2(theta_r)
    double max_dissipator = 0;
    bool diagonal = false;  // no coherence: spread term identically 0
    double norm_drift = 0, energy_drift = 0;
    std::vector<double> theta_series, opnorm_series, times;
};

DotSeedResult dot_seed_run(const RunConfig& c, std::uint64_t seed);
std::vector<DotSeedResult> dot_run_all(const RunConfig& c);  // parallel over seeds

struct IneqLine {
    std::string name;
    long violations = 0;
    double tightest = 0;  // max observed lhs/rhs ratio
};

struct IneqReport {
    std::vector<IneqLine> lines;
    double witness_lhs = 0, witness_rhs = 0;  // the diag(2,1) sharpness pair
    long total_violations() const;
};

IneqReport inequality_campaign(int trials, int max_dim, std::uint64_t seed);

// CLI entry points: write CSV / SVG / report files into c.out_dir.
void run_jc_sweep(const RunConfig& c);
void run_jc_trajectory(const RunConfig& c);
void run_dot(const RunConfig& c);
void run_ineq_check(const RunConfig& c);

} // namespace qsl
