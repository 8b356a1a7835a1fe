#include "qsl/jc.hpp"

#include <cmath>
#include <string>

#include "qsl/eig.hpp"

namespace qsl {

void JCParams::validate() const {
    if (!(gamma0 > 0.0) || !(lambda > 0.0))
        throw contract_violation("JC parameters gamma0 and lambda must be positive");
}

JCParams::Regime JCParams::regime() const {
    validate();
    const double half = 0.5 * lambda;
    if (std::abs(gamma0 - half) <= 1e-9 * lambda) return Regime::critical;
    return gamma0 < half ? Regime::weak : Regime::strong;
}

std::complex<double> big_d(const JCParams& p) {
    const double disc = 2.0 * p.gamma0 * p.lambda - p.lambda * p.lambda;
    switch (p.regime()) {
        case JCParams::Regime::strong: return {std::sqrt(disc), 0.0};
        case JCParams::Regime::weak: return {0.0, std::sqrt(-disc)};
        default: return {0.0, 0.0};
    }
}

double rate_parameter(const JCParams& p) {
    const double disc = std::abs(2.0 * p.gamma0 * p.lambda - p.lambda * p.lambda);
    return std::sqrt(disc);
}

double g_amplitude(double t, const JCParams& p) {
    if (t < 0.0) throw contract_violation("g_amplitude requires t >= 0");
    const double lam = p.lambda;
    switch (p.regime()) {
        case JCParams::Regime::strong: {
            const double d = rate_parameter(p);
            return std::exp(-0.5 * lam * t) *
                   (std::cos(0.5 * d * t) + (lam / d) * std::sin(0.5 * d * t));
        }
        case JCParams::Regime::weak: {
            // exponential split keeps large t stable: d < lambda
            const double d = rate_parameter(p);
            return 0.5 * ((1.0 + lam / d) * std::exp(-0.5 * (lam - d) * t) +
                          (1.0 - lam / d) * std::exp(-0.5 * (lam + d) * t));
        }
        default:
            return std::exp(-0.5 * lam * t) * (1.0 + 0.5 * lam * t);
    }
}

double g_amplitude_dot(double t, const JCParams& p) {
    if (t < 0.0) throw contract_violation("g_amplitude_dot requires t >= 0");
    const double lam = p.lambda, g0 = p.gamma0;
    switch (p.regime()) {
        case JCParams::Regime::strong: {
            const double d = rate_parameter(p);
            return -(g0 * lam / d) * std::exp(-0.5 * lam * t) * std::sin(0.5 * d * t);
        }
        case JCParams::Regime::weak: {
            const double d = rate_parameter(p);
            return -(g0 * lam / (2.0 * d)) *
                   (std::exp(-0.5 * (lam - d) * t) - std::exp(-0.5 * (lam + d) * t));
        }
        default:
            return -std::exp(-0.5 * lam * t) * (lam * lam * t / 4.0);
    }
}

double g_zero(const JCParams& p, int k) {
    if (p.regime() != JCParams::Regime::strong)
        throw contract_violation("G has no zeros outside the strong-coupling regime");
    if (k < 1) throw contract_violation("zero index must be >= 1");
    const double d = rate_parameter(p);
    return (2.0 / d) * (k * M_PI - std::atan(d / p.lambda));
}

double gamma_rate(double t, const JCParams& p) {
    if (t < 0.0) throw contract_violation("gamma_rate requires t >= 0");
    if (p.regime() == JCParams::Regime::strong) {
        const double d = rate_parameter(p);
        const double period = 2.0 * M_PI / d;
        const double first = g_zero(p, 1);
        if (t > first - period) {
            // nearest zero of G
            const int k = std::max(1, static_cast<int>(std::lround((t - first) / period)) + 1);
            for (int kk = std::max(1, k - 1); kk <= k + 1; ++kk) {
                const double pole = g_zero(p, kk);
                if (std::abs(t - pole) < 1e-6)
                    throw singularity_error("gamma(t) evaluated at a pole near t = " +
                                                std::to_string(pole),
                                            pole);
            }
        }
    }
    return -2.0 * g_amplitude_dot(t, p) / g_amplitude(t, p);
}

double dissipator_opnorm_excited(double t, const JCParams& p) {
    return 2.0 * std::abs(g_amplitude(t, p) * g_amplitude_dot(t, p));
}

double oscillator_approx(double t, double d_value, double peak) {
    if (!(d_value > 0.0) || peak < 0.0)
        throw contract_violation("oscillator_approx requires d > 0 and peak >= 0");
    return peak * std::abs(std::sin(d_value * t));
}

int jc_recommended_steps(const JCParams& p, double t_final) {
    const double dt_max =
        std::min(0.01 / p.lambda, 0.05 / std::max(rate_parameter(p), p.lambda));
    return static_cast<int>(std::ceil(t_final / dt_max)) + 1;
}

Trajectory jc_trajectory(const DensityMatrix& rho0, const JCParams& p, double t_final,
                         int n_steps) {
    p.validate();
    if (rho0.dim() != 2) throw contract_violation("JC model requires a 2x2 initial state");
    if (n_steps < 2) throw contract_violation("jc_trajectory requires n_steps >= 2");

    const double ree0 = rho0(0, 0).real();
    const cd reg0 = rho0(0, 1);
    const bool diagonal = std::abs(reg0) < 1e-14;

    Trajectory traj;
    traj.times.reserve(n_steps);
    traj.states.reserve(n_steps);
    traj.dissipators.reserve(n_steps);
    traj.dissipator_opnorms.reserve(n_steps);
    traj.hamiltonian_spreads.reserve(n_steps);
    traj.generators.reserve(n_steps);

    for (int i = 0; i < n_steps; ++i) {
        const double t = t_final * static_cast<double>(i) / (n_steps - 1);
        const double g = g_amplitude(t, p);
        const double gdot = g_amplitude_dot(t, p);
        const cd phase = std::exp(cd(0.0, -p.omega0 * t));

        const double ree = g * g * ree0;
        const cd reg = g * phase * reg0;
        ComplexMatrix rho(2, 2);
        rho(0, 0) = ree;
        rho(0, 1) = reg;
        rho(1, 0) = std::conj(reg);
        rho(1, 1) = 1.0 - ree;

        // pole-free dissipator: gamma |G|^2 = -2 G Gdot, gamma G = -2 Gdot
        ComplexMatrix dis(2, 2);
        dis(0, 0) = 2.0 * g * gdot * ree0;
        dis(1, 1) = -dis(0, 0);
        dis(0, 1) = gdot * phase * reg0;
        dis(1, 0) = std::conj(dis(0, 1));

        ComplexMatrix gen = dis;
        if (!diagonal) {
            // -(i/hbar)[H0, rho] with H0 = omega0 |e><e|
            gen(0, 1) += cd(0.0, -p.omega0) * reg;
            gen(1, 0) += cd(0.0, p.omega0) * std::conj(reg);
        }

        traj.times.push_back(t);
        traj.states.emplace_back(std::move(rho));
        traj.dissipator_opnorms.push_back(schatten_norm_op(dis));
        traj.dissipators.emplace_back(std::move(dis));
        traj.hamiltonian_spreads.push_back(diagonal ? 0.0 : p.omega0);
        traj.generators.emplace_back(std::move(gen));
    }
    return traj;
}

} // namespace qsl
