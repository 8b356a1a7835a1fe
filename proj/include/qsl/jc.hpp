#pragma once

#include <complex>

#include "qsl/trajectory.hpp"

namespace qsl {

// Damped Jaynes-Cummings two-level model in a leaky cavity with a resonant
// Lorentzian bath, hbar = 1.
struct JCParams {
    double gamma0;       // coupling strength
    double lambda;       // spectral width
    double omega0 = 1.0; // transition frequency, enters only H0

    enum class Regime { weak, critical, strong };

    Regime regime() const;
    void validate() const;
};

// D = sqrt(2 gamma0 lambda - lambda^2). Real and positive in the strong
// regime; purely imaginary i*d with d = sqrt(lambda^2 - 2 gamma0 lambda)
// in the weak regime; zero at the critical point.
std::complex<double> big_d(const JCParams& p);

// The real oscillation/relaxation parameter: D when strong, d when weak.
double rate_parameter(const JCParams& p);

// Amplitude-damping amplitude G(t), G(0) = 1. Real on resonance.
double g_amplitude(double t, const JCParams& p);
double g_amplitude_dot(double t, const JCParams& p);

// Decay rate gamma(t) = -2 Re(Gdot/G). Throws singularity_error when t is
// within 1e-6 of a zero of G (a pole of gamma).
double gamma_rate(double t, const JCParams& p);

// k-th zero of G (k >= 1) in the strong regime; the first one is tau_hat_M
// for the fully excited initial state.
double g_zero(const JCParams& p, int k);

// ||D_t(rho_t)||_op for the fully excited initial state: |gamma(t)| |G(t)|^2
// evaluated in the pole-free combined form 2|G Gdot|.
double dissipator_opnorm_excited(double t, const JCParams& p);

// peak * |sin(d_value * t)|
double oscillator_approx(double t, double d_value, double peak);

// Exact trajectory on a uniform n_steps-point grid over [0, t_final].
Trajectory jc_trajectory(const DensityMatrix& rho0, const JCParams& p, double t_final,
                         int n_steps);

// Grid density rule: dt <= min(0.01/lambda, 0.05/max(|D|, lambda)).
int jc_recommended_steps(const JCParams& p, double t_final);

} // namespace qsl
