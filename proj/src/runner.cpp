#include "qsl/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "qsl/csvout.hpp"
#include "qsl/eig.hpp"
#include "qsl/fidelity.hpp"
#include "qsl/rng.hpp"
#include "qsl/svgplot.hpp"

namespace qsl {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& c, const std::string& name) {
    std::error_code ec;
    fs::create_directories(c.out_dir, ec);
    if (ec) throw config_error("cannot create output directory '" + c.out_dir + "'");
    return (fs::path(c.out_dir) / name).string();
}

void write_config_used(const RunConfig& c) {
    std::ofstream out(out_path(c, "config_used.json"), std::ios::binary);
    if (!out) throw config_error("cannot write config_used.json");
    out << config_to_json(c);
}

// Re-check of the validity theorem at the serialization boundary.
void check_bound_row(double bound, double tau_hat, double grid_dt, const std::string& what) {
    if (bound > tau_hat + 2.0 * grid_dt + 1e-9)
        throw contract_violation(what + ": bound " + csv_number(bound) +
                                 " exceeds tau_hat " + csv_number(tau_hat));
}

} // namespace

std::vector<double> sweep_grid(const RunConfig& c) {
    std::vector<double> g(c.sweep_points);
    if (c.sweep_points == 1) {
        g[0] = c.gamma0_min;
        return g;
    }
    const double ratio = std::log(c.gamma0_max / c.gamma0_min);
    for (int i = 0; i < c.sweep_points; ++i)
        g[i] = c.gamma0_min * std::exp(ratio * i / (c.sweep_points - 1));
    return g;
}

SweepRow jc_sweep_point(const RunConfig& c, double gamma0) {
    JCParams p{gamma0, c.lambda, c.omega0};
    p.validate();
    const int steps = c.n_steps > 0 ? c.n_steps : jc_recommended_steps(p, c.tau);
    const DensityMatrix rho0 = DensityMatrix::pure({1.0, 0.0});
    const Trajectory traj = jc_trajectory(rho0, p, c.tau, steps);

    SweepRow r;
    r.gamma0 = gamma0;
    r.lambda = c.lambda;
    r.tau = c.tau;
    r.grid_dt = c.tau / (steps - 1);
    const std::vector<double> theta = theta_r_of_t(traj);
    r.theta_r = theta.back();
    r.tau_hat = minimal_evolution_time(traj, r.theta_r).second;
    r.tau_hat_m = tau_hat_m(traj);
    r.bound_previous = bound_previous(traj, c.tau, c.flavor());
    r.bound_max = bound_final2(traj, r.tau_hat, r.theta_r, 1.0);
    r.beta = beta_estimate(traj, r.tau_hat);
    r.bound_beta = bound_final2(traj, r.tau_hat, r.theta_r, r.beta);
    r.non_markovianity = blp_non_markovianity(p, 1e6);
    return r;
}

std::vector<SweepRow> jc_sweep(const RunConfig& c) {
    const std::vector<double> grid = sweep_grid(c);
    std::vector<SweepRow> rows(grid.size());
    parallel_for(grid.size(), c.jobs, [&](std::size_t i) { rows[i] = jc_sweep_point(c, grid[i]); });
    return rows;
}

void run_jc_sweep(const RunConfig& c) {
    c.validate();
    const std::vector<SweepRow> rows = jc_sweep(c);
    write_config_used(c);

    CsvWriter csv(out_path(c, "jc_sweep.csv"),
                  {"gamma0", "lambda", "tau", "theta_r", "tau_hat", "tau_hat_m",
                   "bound_previous", "bound_max", "bound_beta", "beta", "non_markovianity"});
    for (const SweepRow& r : rows) {
        check_bound_row(r.bound_max, r.tau_hat, r.grid_dt, "jc_sweep bound_max");
        check_bound_row(r.bound_beta, r.tau_hat, r.grid_dt, "jc_sweep bound_beta");
        csv.row({csv_number(r.gamma0), csv_number(r.lambda), csv_number(r.tau),
                 csv_number(r.theta_r), csv_number(r.tau_hat), CsvWriter::field(r.tau_hat_m),
                 csv_number(r.bound_previous), csv_number(r.bound_max), csv_number(r.bound_beta),
                 csv_number(r.beta), csv_number(r.non_markovianity)});
    }

    SvgSeries tau_hat{"tau_hat", "#d62728", {}, {}};
    SvgSeries prev{"bound_previous", "#7f7f7f", {}, {}};
    SvgSeries bmax{"bound_max", "#1f77b4", {}, {}};
    SvgSeries bbeta{"bound_beta", "#2ca02c", {}, {}};
    SvgSeries nm{"non_markovianity", "#9467bd", {}, {}};
    for (const SweepRow& r : rows) {
        tau_hat.x.push_back(r.gamma0);
        tau_hat.y.push_back(r.tau_hat);
        prev.x.push_back(r.gamma0);
        prev.y.push_back(r.bound_previous);
        bmax.x.push_back(r.gamma0);
        bmax.y.push_back(r.bound_max);
        bbeta.x.push_back(r.gamma0);
        bbeta.y.push_back(r.bound_beta);
        nm.x.push_back(r.gamma0);
        nm.y.push_back(r.non_markovianity);
    }
    write_svg_plot(out_path(c, "jc_sweep.svg"),
                   {"minimal evolution time and bounds", "gamma0", "time", true, false},
                   {tau_hat, prev, bmax, bbeta, nm});
}

void run_jc_trajectory(const RunConfig& c) {
    c.validate();
    JCParams p = c.jc_params();
    p.validate();
    const int steps = c.n_steps > 0 ? c.n_steps : jc_recommended_steps(p, c.tau);
    const DensityMatrix rho0 = DensityMatrix::pure({1.0, 0.0});
    const Trajectory traj = jc_trajectory(rho0, p, c.tau, steps);
    const std::vector<double> theta = theta_r_of_t(traj);
    write_config_used(c);

    CsvWriter csv(out_path(c, "jc_trajectory.csv"),
                  {"t", "rho11", "theta_r", "dissipator_opnorm", "gamma_rate"});
    SvgSeries pop{"rho11", "#d62728", {}, {}};
    SvgSeries ang{"theta_r", "#1f77b4", {}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        const double rho11 = traj.states[i](0, 0).real();
        std::optional<double> gamma;
        try {
            gamma = gamma_rate(t, p);
        } catch (const singularity_error&) {
            gamma.reset();  // pole of gamma(t): empty field
        }
        csv.row({csv_number(t), csv_number(rho11), csv_number(theta[i]),
                 csv_number(traj.dissipator_opnorms[i]), CsvWriter::field(gamma)});
        pop.x.push_back(t);
        pop.y.push_back(rho11);
        ang.x.push_back(t);
        ang.y.push_back(theta[i]);
    }
    write_svg_plot(out_path(c, "jc_trajectory.svg"),
                   {"excited-state population and angle", "t", "value", false, false},
                   {pop, ang});

    std::ofstream rep(out_path(c, "jc_trajectory_report.txt"), std::ios::binary);
    rep << "jc-trajectory  gamma0 = " << csv_number(p.gamma0) << "  lambda = "
        << csv_number(p.lambda) << "  window = " << csv_number(c.tau) << "\n";
    if (p.regime() == JCParams::Regime::strong && g_zero(p, 1) <= c.tau)
        rep << "rho11 first zero at t = " << csv_number(g_zero(p, 1)) << "\n";
    else
        rep << "rho11 zero not attained within the window\n";
}

namespace {

int dot_auto_steps(const RunConfig& c, DotInitialState kind) {
    double dt = 0.02;
    if (kind == DotInitialState::coherent) dt = std::min(0.02, 0.04 / std::abs(c.delta_e));
    return static_cast<int>(std::lround(c.dot_tau / dt)) + 1;
}

} // namespace

DotSeedResult dot_seed_run(const RunConfig& c, std::uint64_t seed) {
    const DotInitialState kind = c.dot_state_kind();
    const DotParams p = c.dot_params(seed);
    const int steps = c.dot_steps > 0 ? c.dot_steps : dot_auto_steps(c, kind);
    DotRunStats stats;
    const Trajectory traj = dot_trajectory(p, kind, c.dot_tau, steps, c.h_spread_value(), &stats);

    DotSeedResult r;
    r.seed = seed;
    r.diagonal = (kind == DotInitialState::excited);
    r.theta_series = theta_r_of_t(traj);
    r.theta_r = r.theta_series.back();
    r.tau_hat = minimal_evolution_time(traj, r.theta_r).second;
    r.bound_previous = bound_previous(traj, c.dot_tau, c.flavor());
    for (double b : c.betas) {
        r.bounds.push_back(bound_final2(traj, r.tau_hat, r.theta_r, b));
        r.bounds_tau_window.push_back(bound_final2(traj, c.dot_tau, r.theta_r, b));
    }
    r.beta_estimate = qsl::beta_estimate(traj, r.tau_hat);
    const double s = std::sin(r.theta_r);
    r.numerator = hs_norm(traj.states[0].matrix()) * s * s;
    r.max_dissipator = series_max(traj.times, traj.dissipator_opnorms);
    r.norm_drift = stats.norm_drift;
    r.energy_drift = stats.energy_drift;
    r.opnorm_series = traj.dissipator_opnorms;
    r.times = traj.times;
    return r;
}

std::vector<DotSeedResult> dot_run_all(const RunConfig& c) {
    std::vector<DotSeedResult> results(c.seeds.size());
    parallel_for(c.seeds.size(), c.jobs,
                 [&](std::size_t i) { results[i] = dot_seed_run(c, c.seeds[i]); });
    return results;
}

namespace {

struct Stat {
    double mean = 0, stdev = 0;
};

Stat stat_of(const std::vector<double>& v) {
    Stat s;
    for (double x : v) s.mean += x;
    s.mean /= v.size();
    if (v.size() > 1) {
        double acc = 0;
        for (double x : v) acc += (x - s.mean) * (x - s.mean);
        s.stdev = std::sqrt(acc / (v.size() - 1));
    }
    return s;
}

std::string pm(const Stat& s) { return csv_number(s.mean) + " +/- " + csv_number(s.stdev); }

// Reference values for the two canonical runs (theta_r, tau_hat,
// bound_previous, bound at beta = 1).
struct DotReference {
    double theta_r, tau_hat, bound_previous, bound_beta1;
};

bool canonical_dot_config(const RunConfig& c, DotInitialState kind, DotReference* ref) {
    if (c.n1 != 500 || c.n2 != 500 || std::abs(c.delta_eps - 0.5) > 1e-12 ||
        std::abs(c.coupling - 0.02) > 1e-12 || std::abs(c.dot_tau - 8.0) > 1e-12)
        return false;
    if (kind == DotInitialState::excited && std::abs(c.delta_e - 1.0) < 1e-12) {
        *ref = {0.7707, 2.0, 5.1757, 1.4421};
        return true;
    }
    if (kind == DotInitialState::coherent && std::abs(c.delta_e - 10.0) < 1e-12) {
        *ref = {0.7832, 0.2, 1.0242, 0.1130};
        return true;
    }
    return false;
}

} // namespace

void run_dot(const RunConfig& c) {
    c.validate();
    const DotInitialState kind = c.dot_state_kind();
    const std::vector<DotSeedResult> results = dot_run_all(c);
    write_config_used(c);
    const std::size_t n_seeds = results.size();
    const std::size_t n_times = results[0].times.size();
    const double grid_dt = results[0].times[1] - results[0].times[0];

    // ensemble-mean per-time CSV + plot
    CsvWriter csv(out_path(c, "dot_run.csv"), {"t", "theta_r", "dissipator_opnorm"});
    SvgSeries ang{"theta_r (mean)", "#1f77b4", {}, {}};
    SvgSeries dis{"dissipator_opnorm (mean)", "#d62728", {}, {}};
    for (std::size_t i = 0; i < n_times; ++i) {
        double th = 0, op = 0;
        for (const auto& r : results) {
            th += r.theta_series[i];
            op += r.opnorm_series[i];
        }
        th /= n_seeds;
        op /= n_seeds;
        csv.row({csv_number(results[0].times[i]), csv_number(th), csv_number(op)});
        ang.x.push_back(results[0].times[i]);
        ang.y.push_back(th);
        dis.x.push_back(results[0].times[i]);
        dis.y.push_back(op);
    }
    write_svg_plot(out_path(c, "dot_run.svg"),
                   {"dot model ensemble means", "t", "value", false, false}, {ang, dis});

    std::vector<double> thetas, tau_hats, prevs, beta_ests;
    std::vector<std::vector<double>> per_beta(c.betas.size()), per_beta_tau(c.betas.size());
    for (const auto& r : results) {
        thetas.push_back(r.theta_r);
        tau_hats.push_back(r.tau_hat);
        prevs.push_back(r.bound_previous);
        beta_ests.push_back(r.beta_estimate);
        for (std::size_t b = 0; b < c.betas.size(); ++b) {
            per_beta[b].push_back(r.bounds[b]);
            per_beta_tau[b].push_back(r.bounds_tau_window[b]);
        }
        for (std::size_t b = 0; b < c.betas.size(); ++b)
            if (c.betas[b] >= 1.0 - 1e-12)
                check_bound_row(r.bounds[b], r.tau_hat, grid_dt, "dot_run bound(beta=1)");
    }

    std::ofstream rep(out_path(c, "dot_run_report.txt"), std::ios::binary);
    if (!rep) throw config_error("cannot write dot_run_report.txt");
    rep << "dot-model run\n"
        << "kind: " << c.dot_kind << "  n1: " << c.n1 << "  n2: " << c.n2
        << "  delta_eps: " << csv_number(c.delta_eps) << "  delta_e: " << csv_number(c.delta_e)
        << "  coupling: " << csv_number(c.coupling) << "\n"
        << "tau: " << csv_number(c.dot_tau) << "  samples: " << n_times
        << "  norm flavor: " << c.norm_flavor << "\n"
        << "h-spread convention: " << c.h_spread << " (value " << csv_number(c.h_spread_value())
        << (results[0].diagonal ? ", inactive: diagonal reduced state)" : ")") << "\n\n";

    rep << "per seed:\nseed,theta_r,tau_hat,bound_previous";
    for (double b : c.betas) rep << ",bound(beta=" << csv_number(b) << ")";
    rep << ",beta_estimate,norm_drift,energy_drift\n";
    for (const auto& r : results) {
        rep << r.seed << ',' << csv_number(r.theta_r) << ',' << csv_number(r.tau_hat) << ','
            << csv_number(r.bound_previous);
        for (double bv : r.bounds) rep << ',' << csv_number(bv);
        rep << ',' << csv_number(r.beta_estimate) << ',' << csv_number(r.norm_drift) << ','
            << csv_number(r.energy_drift) << "\n";
    }

    rep << "\nensemble mean +/- stdev (" << n_seeds << " seeds):\n"
        << "theta_r         = " << pm(stat_of(thetas)) << "\n"
        << "tau_hat         = " << pm(stat_of(tau_hats)) << "\n"
        << "bound_previous  = " << pm(stat_of(prevs)) << "\n";
    for (std::size_t b = 0; b < c.betas.size(); ++b)
        rep << "bound(beta=" << csv_number(c.betas[b]) << ") = " << pm(stat_of(per_beta[b]))
            << "   [spread averaged over [0,tau]: " << pm(stat_of(per_beta_tau[b])) << "]\n";
    rep << "beta_estimate   = " << pm(stat_of(beta_ests)) << "\n";

    // both H-spread conventions, recomputed from the stored pieces (the
    // spread series is constant in time, so the window does not matter)
    rep << "\nH-spread convention comparison, bound(beta=1) ensemble mean:\n";
    double mean_half = 0, mean_full = 0;
    for (const auto& r : results) {
        const double spread_half = r.diagonal ? 0.0 : c.delta_e;
        const double spread_full = r.diagonal ? 0.0 : 2.0 * c.delta_e;
        mean_half += r.numerator / (0.5 * spread_half + r.max_dissipator);
        mean_full += r.numerator / (0.5 * spread_full + r.max_dissipator);
    }
    mean_half /= n_seeds;
    mean_full /= n_seeds;
    rep << "half (" << csv_number(c.delta_e) << "): " << csv_number(mean_half) << "\n"
        << "full (" << csv_number(2.0 * c.delta_e) << "): " << csv_number(mean_full) << "\n";
    if (results[0].diagonal) {
        rep << "diagonal reduced state: the two conventions coincide\n";
    } else {
        DotReference ref{};
        if (canonical_dot_config(c, kind, &ref)) {
            const char* closest =
                std::abs(mean_half - ref.bound_beta1) <= std::abs(mean_full - ref.bound_beta1)
                    ? "half"
                    : "full";
            rep << "closest to the reference value " << csv_number(ref.bound_beta1) << ": "
                << closest << "\n";
        }
    }
}

IneqReport inequality_campaign(int trials, int max_dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    IneqReport rep;
    rep.lines = {{"von Neumann chain", 0, 0.0},
                 {"absolute trace inequality", 0, 0.0},
                 {"commutator inequality", 0, 0.0},
                 {"Schatten p-monotonicity", 0, 0.0},
                 {"density spread norm <= 1", 0, 0.0}};

    const auto ginibre = [&rng](std::size_t n) {
        ComplexMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = standard_complex_gaussian(rng);
        return g;
    };
    const auto random_psd = [&ginibre](std::size_t n) {
        const ComplexMatrix g = ginibre(n);
        return matmul(g, g.adjoint());
    };
    const auto random_density = [&random_psd](std::size_t n) {
        ComplexMatrix m = random_psd(n);
        m *= 1.0 / m.trace();
        return DensityMatrix(std::move(m));
    };
    const auto record = [&rep](std::size_t line, double lhs, double rhs) {
        const double ratio = rhs > 1e-300 ? lhs / rhs : (lhs > 0 ? 2.0 : 0.0);
        rep.lines[line].tightest = std::max(rep.lines[line].tightest, ratio);
        if (lhs > rhs * (1.0 + 1e-9) + 1e-12) ++rep.lines[line].violations;
    };

    for (int t = 0; t < trials; ++t) {
        const std::size_t dim = 2 + rng() % (max_dim - 1);

        const DensityMatrix r1 = random_density(dim), r2 = random_density(dim);
        const std::vector<double> s1 = singular_values(r1.matrix());
        const std::vector<double> s2 = singular_values(r2.matrix());
        double dot12 = 0;
        for (std::size_t i = 0; i < dim; ++i) dot12 += s1[i] * s2[i];
        record(0, matmul(r1.matrix(), r2.matrix()).trace().real(), dot12);
        record(0, dot12, hs_norm(r1.matrix()) * hs_norm(r2.matrix()));
        record(0, hs_norm(r1.matrix()) * hs_norm(r2.matrix()), hs_norm(r2.matrix()));

        const ComplexMatrix a = ginibre(dim), b = ginibre(dim);
        const std::vector<double> sa = singular_values(a), sb = singular_values(b);
        double tra = 0, trb = 0;
        for (double s : sa) tra += s;
        for (double s : sb) trb += s;
        record(1, std::abs(matmul(a, b).trace()), std::min(sa[0] * trb, sb[0] * tra));

        const ComplexMatrix pa = random_psd(dim), pb = random_psd(dim);
        record(2, schatten_norm_op(commutator(pa, pb)),
               0.5 * spread_norm(pa) * spread_norm(pb));

        double prev_norm = schatten_norm(a, 1.0);
        bool mono = true;
        for (double p : {1.5, 2.0, 3.0, 5.0}) {
            const double cur = schatten_norm(a, p);
            if (cur > prev_norm * (1.0 + 1e-9)) mono = false;
            prev_norm = cur;
        }
        if (schatten_norm_op(a) > prev_norm * (1.0 + 1e-9)) mono = false;
        if (!mono) ++rep.lines[3].violations;
        rep.lines[3].tightest = std::max(rep.lines[3].tightest, schatten_norm_op(a) / prev_norm);

        record(4, spread_norm(r1.matrix()), 1.0);
    }

    ComplexMatrix wa = ComplexMatrix::diag({2.0, 1.0});
    ComplexMatrix wb(2, 2, {0.5, 0.5, 0.5, 0.5});
    rep.witness_lhs = schatten_norm_op(commutator(wa, wb));
    rep.witness_rhs = 0.5 * spread_norm(wa) * spread_norm(wb);
    return rep;
}

long IneqReport::total_violations() const {
    long total = 0;
    for (const auto& l : lines) total += l.violations;
    return total;
}

void run_ineq_check(const RunConfig& c) {
    c.validate();
    const IneqReport r = inequality_campaign(c.trials, c.max_dim, c.seed);
    write_config_used(c);
    std::ofstream rep(out_path(c, "ineq_report.txt"), std::ios::binary);
    if (!rep) throw config_error("cannot write ineq_report.txt");
    rep << "inequality campaign\n"
        << "trials: " << c.trials << "  max dim: " << c.max_dim << "  seed: " << c.seed << "\n";
    for (const auto& l : r.lines)
        rep << l.name << ": violations " << l.violations << "  tightest ratio "
            << csv_number(l.tightest) << "\n";
    rep << "sharpness witness A = diag(2,1), B = [[1,1],[1,1]]/2:\n"
        << "||[A,B]||_op = " << csv_number(r.witness_lhs)
        << "  bound (1/2)||A||_spread*||B||_spread = " << csv_number(r.witness_rhs)
        << "  ratio = " << csv_number(r.witness_lhs / r.witness_rhs) << "\n"
        << "total violations: " << r.total_violations() << "\n";
    if (r.total_violations() != 0)
        throw contract_violation("inequality campaign observed violations");
}

} // namespace qsl
