#include "qsl/qsl.hpp"

#include <algorithm>
#include <cmath>

#include "qsl/eig.hpp"
#include "qsl/fidelity.hpp"

namespace qsl {

std::vector<double> theta_r_of_t(const Trajectory& traj) {
    if (traj.size() == 0) throw contract_violation("empty trajectory");
    std::vector<double> theta(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        theta[i] = relative_purity_fidelity(traj.states[i], traj.states[0]).angle;
    return theta;
}

std::pair<TimeSet, double> minimal_evolution_time(const Trajectory& traj, double target_theta) {
    const std::vector<double> theta = theta_r_of_t(traj);
    const double max_theta = *std::max_element(theta.begin(), theta.end());
    if (target_theta < -1e-12 || target_theta > max_theta + 1e-12)
        throw unattained_target("target angle outside attained range", max_theta);

    TimeSet set;
    const double tol = 1e-12;
    for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
        const double a = theta[i] - target_theta;
        const double b = theta[i + 1] - target_theta;
        if (std::abs(a) <= tol) {
            // tie at a node resolves to the earlier time
            if (set.crossing_times.empty() ||
                traj.times[i] > set.crossing_times.back() + 1e-12)
                set.crossing_times.push_back(traj.times[i]);
        } else if (a * b < 0.0) {
            const double frac = a / (a - b);
            set.crossing_times.push_back(traj.times[i] +
                                         frac * (traj.times[i + 1] - traj.times[i]));
        }
    }
    if (std::abs(theta.back() - target_theta) <= tol) {
        if (set.crossing_times.empty() ||
            traj.times.back() > set.crossing_times.back() + 1e-12)
            set.crossing_times.push_back(traj.times.back());
    }
    if (set.crossing_times.empty())
        throw unattained_target("no crossing located for target angle", max_theta);
    return {set, set.crossing_times.front()};
}

namespace {

// parabolic refinement of a discrete extremum at index j
double refine_peak_time(const std::vector<double>& t, const std::vector<double>& v,
                        std::size_t j) {
    if (j == 0 || j + 1 >= v.size()) return t[j];
    const double denom = v[j - 1] - 2.0 * v[j] + v[j + 1];
    if (std::abs(denom) < 1e-300) return t[j];
    double shift = 0.5 * (v[j - 1] - v[j + 1]) / denom;
    shift = std::clamp(shift, -1.0, 1.0);
    return t[j] + shift * (t[j + 1] - t[j]);
}

double refine_peak_value(const std::vector<double>& v, std::size_t j) {
    if (j == 0 || j + 1 >= v.size()) return v[j];
    const double denom = v[j - 1] - 2.0 * v[j] + v[j + 1];
    if (denom >= -1e-300) return v[j];
    const double shift = std::clamp(0.5 * (v[j - 1] - v[j + 1]) / denom, -1.0, 1.0);
    return v[j] - 0.25 * (v[j - 1] - v[j + 1]) * shift;
}

} // namespace

std::optional<double> tau_hat_m(const Trajectory& traj) {
    const std::vector<double> theta = theta_r_of_t(traj);
    const std::size_t n = theta.size();
    const auto it = std::max_element(theta.begin(), theta.end());
    const double max_theta = *it;
    if (max_theta <= 1e-12) return 0.0;  // Theta_R identically zero
    const std::size_t argmax = static_cast<std::size_t>(it - theta.begin());
    if (argmax == n - 1 && theta[n - 1] > theta[n - 2] + 1e-14)
        return std::nullopt;  // still rising at the window end
    // Refine on F_R^2 = cos^2(theta): smooth where theta = arccos|.| has a
    // cusp, so the parabolic fit stays second-order accurate.
    std::vector<double> neg_f2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(theta[i]);
        neg_f2[i] = -c * c;
    }
    const double peak_f2 = *std::max_element(neg_f2.begin(), neg_f2.end());
    std::size_t first = argmax;
    for (std::size_t i = 0; i < n; ++i)
        if (neg_f2[i] >= peak_f2 - 1e-12) { first = i; break; }
    return refine_peak_time(traj.times, neg_f2, first);
}

double time_average(const Trajectory& traj, const std::vector<double>& series, double tau) {
    if (series.size() != traj.size())
        throw contract_violation("series length does not match trajectory");
    if (tau <= 0.0) throw contract_violation("time average requires tau > 0");
    if (tau > traj.times.back() * (1.0 + 1e-12))
        throw contract_violation("time average window exceeds trajectory");
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double t0 = traj.times[i], t1 = traj.times[i + 1];
        if (t0 >= tau) break;
        if (t1 <= tau) {
            integral += 0.5 * (series[i] + series[i + 1]) * (t1 - t0);
        } else {
            const double frac = (tau - t0) / (t1 - t0);
            const double v_tau = series[i] + frac * (series[i + 1] - series[i]);
            integral += 0.5 * (series[i] + v_tau) * (tau - t0);
            break;
        }
    }
    return integral / tau;
}

double series_max(const std::vector<double>& times, const std::vector<double>& values) {
    const auto it = std::max_element(values.begin(), values.end());
    (void)times;
    return refine_peak_value(values, static_cast<std::size_t>(it - values.begin()));
}

namespace {

double bound_numerator(const Trajectory& traj, double theta) {
    const double hs0 = hs_norm(traj.states[0].matrix());
    const double s = std::sin(theta);
    return hs0 * s * s;
}

} // namespace

double bound_final1(const Trajectory& traj, double tau, double theta) {
    const double denom = 0.5 * time_average(traj, traj.hamiltonian_spreads, tau) +
                         time_average(traj, traj.dissipator_opnorms, tau);
    if (denom < 1e-14) throw degenerate_evolution("no dynamics: bound denominator is zero");
    return bound_numerator(traj, theta) / denom;
}

double bound_final2(const Trajectory& traj, double tau_hat_window, double theta, double beta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw contract_violation("beta must lie in (0, 1]");
    const double max_d = series_max(traj.times, traj.dissipator_opnorms);
    const double denom =
        0.5 * time_average(traj, traj.hamiltonian_spreads, tau_hat_window) + beta * max_d;
    if (denom < 1e-14) throw degenerate_evolution("no dynamics: bound denominator is zero");
    return bound_numerator(traj, theta) / denom;
}

double beta_estimate(const Trajectory& traj, double tau_hat) {
    const double max_d = series_max(traj.times, traj.dissipator_opnorms);
    if (max_d < 1e-14) throw degenerate_evolution("no dynamics: dissipator never acts");
    const double avg = time_average(traj, traj.dissipator_opnorms, tau_hat);
    return std::clamp(avg / max_d, 1e-300, 1.0);
}

double bound_previous(const Trajectory& traj, double tau, NormFlavor flavor) {
    const DensityMatrix& rho0 = traj.states[0];
    Eigensystem es = hermitian_eigensystem(rho0.matrix());
    if (es.values.front() < 1.0 - 1e-6)
        throw contract_violation("comparison bound requires an effectively pure rho_0");

    // nearest stored sample to tau
    std::size_t j = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double d = std::abs(traj.times[i] - tau);
        if (d < best) { best = d; j = i; }
    }
    const double theta_b = bures_fidelity(rho0, traj.states[j]).angle;

    std::vector<double> gen_norms(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        switch (flavor) {
            case NormFlavor::op: gen_norms[i] = schatten_norm_op(traj.generators[i]); break;
            case NormFlavor::tr: gen_norms[i] = trace_norm(traj.generators[i]); break;
            case NormFlavor::hs: gen_norms[i] = hs_norm(traj.generators[i]); break;
        }
    }
    const double denom = time_average(traj, gen_norms, tau);
    if (denom < 1e-14) throw degenerate_evolution("no dynamics: generator never acts");
    const double s = std::sin(theta_b);
    return s * s / denom;
}

double blp_non_markovianity(const JCParams& params, double t_window) {
    params.validate();
    if (params.regime() != JCParams::Regime::strong) return 0.0;
    const double d = rate_parameter(params);
    double total = 0.0;
    for (int k = 1;; ++k) {
        const double trough = g_zero(params, k);       // G = 0
        if (trough >= t_window) break;
        const double peak = 2.0 * M_PI * k / d;        // Gdot = 0, |G|^2 = e^{-lambda t}
        if (peak <= t_window) {
            total += std::exp(-params.lambda * peak);
        } else {
            const double g = g_amplitude(t_window, params);
            total += g * g;  // partial rise up to the window end
            break;
        }
        if (std::exp(-params.lambda * peak) < 1e-15) break;
    }
    return total;
}

} // namespace qsl
