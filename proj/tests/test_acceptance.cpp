// Acceptance gate: one self-contained check per criterion, each printing a
// single PASS/FAIL line with the measured numbers before asserting.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qsl/eig.hpp"
#include "qsl/fidelity.hpp"
#include "qsl/rng.hpp"
#include "qsl/runner.hpp"

using namespace qsl;

namespace {

int all_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Clause {
    std::string name;
    bool ok;
};

void report(int criterion, const std::vector<Clause>& clauses, const std::string& detail) {
    bool all_ok = true;
    std::string failing;
    for (const Clause& c : clauses) {
        if (!c.ok) {
            all_ok = false;
            failing += (failing.empty() ? "" : ", ") + c.name;
        }
    }
    std::printf("criterion %d: %s (%s%s%s)\n", criterion, all_ok ? "PASS" : "FAIL",
                detail.c_str(), failing.empty() ? "" : "; failing: ", failing.c_str());
    std::fflush(stdout);
    for (const Clause& c : clauses) CHECK_MESSAGE(c.ok, "criterion ", criterion, ": ", c.name);
}

bool in_band(double x, double center, double half_width) {
    return x >= center - half_width && x <= center + half_width;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

const std::vector<SweepRow>& sweep_rows() {
    static const std::vector<SweepRow> rows = [] {
        RunConfig c;  // defaults: 120 log-spaced points in [0.05, 50], tau = 10
        c.jobs = all_jobs();
        return jc_sweep(c);
    }();
    return rows;
}

std::vector<DotSeedResult> dot_results(const std::string& kind, double delta_e) {
    RunConfig c;  // defaults: 500x500, delta_eps 0.5, coupling 0.02, tau 8,
                  // betas {1.0, 0.72}, seeds 1..10
    c.dot_kind = kind;
    c.delta_e = delta_e;
    c.jobs = all_jobs();
    return dot_run_all(c);
}

const std::vector<DotSeedResult>& excited_results() {
    static const std::vector<DotSeedResult> r = dot_results("excited", 1.0);
    return r;
}

double mean_of(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    return m / v.size();
}

} // namespace

TEST_CASE("criterion 1: strong-coupling landmark time") {
    const JCParams p{10.0, 1.0};
    const double d = std::sqrt(19.0);
    const double formula = (2.0 / d) * (M_PI - std::atan(d / p.lambda));

    // independent oracle: bisection on the closed-form |G|^2
    double lo = 0.5, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g_amplitude(mid, p) > 0.0 ? lo : hi) = mid;
    }
    const double oracle = 0.5 * (lo + hi);

    // simulated: earliest maximum of Theta_R along the stored trajectory
    const DensityMatrix rho0 = DensityMatrix::pure({1.0, 0.0});
    const Trajectory traj = jc_trajectory(rho0, p, 2.0, jc_recommended_steps(p, 2.0));
    const auto sim = tau_hat_m(traj);

    report(1,
           {{"oracle matches the closed-form expression",
             std::abs(oracle - formula) < 1e-9},
            {"simulated tau_hat_M within 1e-3 of the oracle",
             sim.has_value() && std::abs(*sim - oracle) < 1e-3}},
           "formula=" + num(formula) + " oracle=" + num(oracle) +
               " simulated=" + num(sim.value_or(-1.0)));
}

TEST_CASE("criterion 2: sweep shape across the coupling transition") {
    const auto& rows = sweep_rows();
    const double tol = 2.0 * rows[0].grid_dt;

    bool flat_below = true;
    bool strict_above = true;
    double first_drop = -1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].gamma0 < 0.5 && std::abs(rows[i].tau_hat - rows[i].tau) > tol)
            flat_below = false;
        if (i + 1 < rows.size() && rows[i].gamma0 > 0.5) {
            if (!(rows[i + 1].tau_hat < rows[i].tau_hat - 1e-9)) strict_above = false;
            if (first_drop < 0 && rows[i + 1].tau_hat < rows[i].tau_hat - tol)
                first_drop = rows[i + 1].gamma0;
        }
    }

    // second-difference spike around the transition vs the global median
    std::vector<double> d2(rows.size(), 0.0);
    for (std::size_t i = 1; i + 1 < rows.size(); ++i)
        d2[i] = std::abs(rows[i - 1].tau_hat - 2.0 * rows[i].tau_hat + rows[i + 1].tau_hat);
    double spike = 0.0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i)
        if (rows[i].gamma0 > 0.3 && rows[i].gamma0 < 1.0) spike = std::max(spike, d2[i]);
    std::vector<double> sorted(d2.begin() + 1, d2.end() - 1);
    std::sort(sorted.begin(), sorted.end());
    const double median = std::max(sorted[sorted.size() / 2], 1e-12);

    bool nm_zero_below = true, nm_pos_above = true;
    for (const SweepRow& r : rows) {
        if (r.gamma0 <= 0.5 && r.non_markovianity != 0.0) nm_zero_below = false;
        if (r.gamma0 >= 0.6 && !(r.non_markovianity > 0.0)) nm_pos_above = false;
    }

    report(2,
           {{"tau_hat = tau for gamma0 < 0.5", flat_below},
            {"tau_hat strictly decreases for gamma0 > 0.5", strict_above},
            {"second-difference spike exceeds 10x median", spike > 10.0 * median},
            {"N = 0 for gamma0 <= 0.5", nm_zero_below},
            {"N > 0 for gamma0 >= 0.6", nm_pos_above}},
           "first drop at gamma0=" + num(first_drop) + " spike=" + num(spike) +
               " median=" + num(median));
}

TEST_CASE("criterion 3: bound validity at every sweep point and seed") {
    long violations = 0;
    double worst_margin = -1e300;
    for (const SweepRow& r : sweep_rows()) {
        const double margin = r.bound_max - r.tau_hat;
        worst_margin = std::max(worst_margin, margin);
        if (margin > 2.0 * r.grid_dt + 1e-9) ++violations;
    }
    const auto& dots = excited_results();
    for (const DotSeedResult& r : dots) {
        const double grid_dt = r.times[1] - r.times[0];
        const double margin = r.bounds[0] - r.tau_hat;  // betas[0] = 1.0
        worst_margin = std::max(worst_margin, margin);
        if (margin > 2.0 * grid_dt + 1e-9) ++violations;
    }
    report(3, {{"zero violations of bound(beta=1) <= tau_hat", violations == 0}},
           "sweep points=" + std::to_string(sweep_rows().size()) +
               " seeds=" + std::to_string(dots.size()) +
               " worst margin=" + num(worst_margin));
}

TEST_CASE("criterion 4: beta asymptote in the deep strong-coupling limit") {
    RunConfig c;
    c.jobs = 1;
    const SweepRow r = jc_sweep_point(c, 200.0);
    const double target = 2.0 / M_PI;
    report(4, {{"beta within 0.05 of 2/pi", in_band(r.beta, target, 0.05)}},
           "beta=" + num(r.beta) + " 2/pi=" + num(target));
}

TEST_CASE("criterion 5: oscillator form of the dissipator norm") {
    const JCParams p{200.0, 1.0};
    const double d = rate_parameter(p);
    const double period = M_PI / d;  // one arch of |sin(D t)|

    const int n = 20001;
    std::vector<double> t(n), curve(n);
    double max_err = 0.0;
    for (int i = 0; i < n; ++i) {
        t[i] = period * i / (n - 1);
        curve[i] = dissipator_opnorm_excited(t[i], p);
        max_err = std::max(max_err,
                           std::abs(curve[i] / (0.5 * d) - std::abs(std::sin(d * t[i]))));
    }
    const double peak_ratio = series_max(t, curve) / (0.5 * d);

    report(5,
           {{"peak within [0.97, 1.03] of D/2", peak_ratio >= 0.97 && peak_ratio <= 1.03},
            {"normalized curve matches |sin(Dt)| within 5%", max_err <= 0.05}},
           "peak ratio=" + num(peak_ratio) + " max sin-match error=" + num(max_err));
}

TEST_CASE("criterion 6: excited-state dot ensemble") {
    const auto& rs = excited_results();
    std::vector<double> th, tau, prev, b1, b072;
    for (const auto& r : rs) {
        th.push_back(r.theta_r);
        tau.push_back(r.tau_hat);
        prev.push_back(r.bound_previous);
        b1.push_back(r.bounds[0]);
        b072.push_back(r.bounds[1]);
    }
    const double m_th = mean_of(th), m_tau = mean_of(tau), m_prev = mean_of(prev),
                 m_b1 = mean_of(b1), m_b072 = mean_of(b072);
    report(6,
           {{"Theta_R = 0.7707 +/- 0.04", in_band(m_th, 0.7707, 0.04)},
            {"tau_hat = 2.0 +/- 0.3", in_band(m_tau, 2.0, 0.3)},
            {"bound_previous = 5.18 +/- 0.5", in_band(m_prev, 5.18, 0.5)},
            {"bound(beta=1) = 1.44 +/- 0.15", in_band(m_b1, 1.44, 0.15)},
            {"bound(beta=0.72) = 1.99 +/- 0.2", in_band(m_b072, 1.99, 0.2)}},
           "means: theta=" + num(m_th) + " tau_hat=" + num(m_tau) + " prev=" + num(m_prev) +
               " b1=" + num(m_b1) + " b072=" + num(m_b072));
}

TEST_CASE("criterion 7: coherent-state dot ensemble") {
    const auto rs = dot_results("coherent", 10.0);
    std::vector<double> th, tau, prev, b1, b072;
    for (const auto& r : rs) {
        th.push_back(r.theta_r);
        tau.push_back(r.tau_hat);
        prev.push_back(r.bound_previous);
        b1.push_back(r.bounds[0]);
        b072.push_back(r.bounds[1]);
    }
    const double m_th = mean_of(th), m_tau = mean_of(tau), m_prev = mean_of(prev),
                 m_b1 = mean_of(b1), m_b072 = mean_of(b072);
    const double ratio = m_b072 / m_b1;
    report(7,
           {{"Theta_R = 0.7832 +/- 0.04", in_band(m_th, 0.7832, 0.04)},
            {"tau_hat = 0.2 +/- 0.05", in_band(m_tau, 0.2, 0.05)},
            {"ordering bound_previous > bound(0.72) > bound(1)",
             m_prev > m_b072 && m_b072 > m_b1},
            {"bound_previous = 1.02 +/- 0.15", in_band(m_prev, 1.02, 0.15)},
            {"bound(0.72)/bound(1) in [1.0, 1.12]", ratio >= 1.0 && ratio <= 1.12}},
           "means: theta=" + num(m_th) + " tau_hat=" + num(m_tau) + " prev=" + num(m_prev) +
               " b1=" + num(m_b1) + " b072=" + num(m_b072) + " ratio=" + num(ratio));
}

TEST_CASE("criterion 8: randomized inequality campaign with sharp witness") {
    const IneqReport rep = inequality_campaign(500, 8, 1);
    report(8,
           {{"zero violations across all inequalities", rep.total_violations() == 0},
            {"witness commutator norm is exactly 1/2",
             std::abs(rep.witness_lhs - 0.5) < 1e-12 && std::abs(rep.witness_rhs - 0.5) < 1e-12}},
           "violations=" + std::to_string(rep.total_violations()) +
               " witness lhs=" + num(rep.witness_lhs) + " rhs=" + num(rep.witness_rhs));
}

TEST_CASE("criterion 9: fidelity reductions") {
    std::mt19937_64 rng(9);
    const auto random_density = [&rng](std::size_t n) {
        ComplexMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = standard_complex_gaussian(rng);
        ComplexMatrix m = matmul(g, g.adjoint());
        m *= 1.0 / m.trace();
        return DensityMatrix(std::move(m));
    };
    const auto random_pure = [&rng](std::size_t n) {
        std::vector<cd> amp(n);
        double norm = 0;
        for (cd& a : amp) {
            a = standard_complex_gaussian(rng);
            norm += std::norm(a);
        }
        for (cd& a : amp) a /= std::sqrt(norm);
        return DensityMatrix::pure(amp);
    };

    double max_pure_gap = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 4;
        const DensityMatrix r1 = random_density(n), r2 = random_pure(n);
        max_pure_gap = std::max(max_pure_gap, std::abs(bures_fidelity(r1, r2).value -
                                                       relative_purity_fidelity(r1, r2).value));
    }

    double max_linearity_gap = 0.0;
    bool bounded = true;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 4;
        const DensityMatrix ra = random_density(n), rb = random_density(n),
                            ref = random_density(n);
        const double alpha = 0.37;
        ComplexMatrix mix = ra.matrix();
        mix *= alpha;
        ComplexMatrix other = rb.matrix();
        other *= 1.0 - alpha;
        mix += other;
        const double fmix = relative_purity_fidelity(DensityMatrix(std::move(mix)), ref).value;
        const double fa = relative_purity_fidelity(ra, ref).value;
        const double fb = relative_purity_fidelity(rb, ref).value;
        max_linearity_gap = std::max(
            max_linearity_gap,
            std::abs(fmix * fmix - (alpha * fa * fa + (1 - alpha) * fb * fb)));
        if (fmix < 0.0 || fmix > 1.0 || fa < 0.0 || fa > 1.0) bounded = false;
    }

    report(9,
           {{"F_B = F_R for pure references (1e-9)", max_pure_gap < 1e-9},
            {"F_R^2 linear in the evolving state (1e-10)", max_linearity_gap < 1e-10},
            {"0 <= F_R <= 1 everywhere", bounded}},
           "pure gap=" + num(max_pure_gap) + " linearity gap=" + num(max_linearity_gap));
}
