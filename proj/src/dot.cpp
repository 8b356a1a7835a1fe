#include "qsl/dot.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qsl/kernels.hpp"
#include "qsl/rng.hpp"

namespace qsl {

namespace {

using kernels::axpy;
using kernels::dotc;
using kernels::gemv;
using kernels::nrm2sq;

cd complex_gaussian(std::mt19937_64& rng) { return standard_complex_gaussian(rng); }

double band1_energy(const DotParams& p, std::size_t i) {
    return 0.5 * p.delta_e + p.delta_eps * static_cast<double>(i + 1) / p.n1;
}

double band2_energy(const DotParams& p, std::size_t j) {
    return 0.5 * p.delta_e + p.delta_eps * static_cast<double>(j + 1) / p.n2;
}

ComplexMatrix coupling_block(const DotParams& p) {
    std::mt19937_64 rng(p.seed);
    ComplexMatrix b(p.n1, p.n2);
    for (std::size_t i = 0; i < p.n1; ++i)
        for (std::size_t j = 0; j < p.n2; ++j)
            b(i, j) = p.coupling * complex_gaussian(rng);
    return b;
}

// Block view of the sector Hamiltonian with a diagonal shift applied.
struct SectorOp {
    std::vector<double> diag;  // shifted, length n1 + n2
    ComplexMatrix block;       // n1 x n2
    ComplexMatrix block_adj;   // n2 x n1
    std::size_t n1, n2;

    // out = (H - shift) * in
    void apply(const cd* in, cd* out) const {
        gemv(n1, n2, block.data(), in + n1, out);
        gemv(n2, n1, block_adj.data(), in, out + n1);
        for (std::size_t i = 0; i < n1 + n2; ++i) out[i] += diag[i] * in[i];
    }

    double opnorm_estimate() const {
        std::mt19937_64 rng(12345);
        const std::size_t m = n1 + n2;
        std::vector<cd> v(m), w(m);
        for (cd& x : v) x = complex_gaussian(rng);
        double norm = 0.0;
        for (int it = 0; it < 25; ++it) {
            apply(v.data(), w.data());
            norm = std::sqrt(nrm2sq(m, w.data()));
            if (norm < 1e-300) return 0.0;
            for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / norm;
        }
        return norm * 1.05;
    }
};

SectorOp make_sector_op(const DotParams& p, double shift) {
    SectorOp op;
    op.n1 = p.n1;
    op.n2 = p.n2;
    op.diag.resize(p.n1 + p.n2);
    for (std::size_t i = 0; i < p.n1; ++i) op.diag[i] = band1_energy(p, i) - shift;
    for (std::size_t j = 0; j < p.n2; ++j) op.diag[p.n1 + j] = band2_energy(p, j) - shift;
    op.block = coupling_block(p);
    op.block_adj = op.block.adjoint();
    return op;
}

// One classical 4th-order step of i psi_dot = H psi (derivative -i H psi).
template <typename Apply>
void rk4_step(const Apply& apply_h, std::vector<cd>& psi, double dt, std::vector<cd>& k1,
              std::vector<cd>& k2, std::vector<cd>& k3, std::vector<cd>& k4,
              std::vector<cd>& tmp) {
    const std::size_t m = psi.size();
    const cd mi(0.0, -1.0);

    apply_h(psi.data(), k1.data());
    for (std::size_t i = 0; i < m; ++i) k1[i] *= mi;

    tmp = psi;
    axpy(m, 0.5 * dt, k1.data(), tmp.data());
    apply_h(tmp.data(), k2.data());
    for (std::size_t i = 0; i < m; ++i) k2[i] *= mi;

    tmp = psi;
    axpy(m, 0.5 * dt, k2.data(), tmp.data());
    apply_h(tmp.data(), k3.data());
    for (std::size_t i = 0; i < m; ++i) k3[i] *= mi;

    tmp = psi;
    axpy(m, dt, k3.data(), tmp.data());
    apply_h(tmp.data(), k4.data());
    for (std::size_t i = 0; i < m; ++i) k4[i] *= mi;

    axpy(m, dt / 6.0, k1.data(), psi.data());
    axpy(m, dt / 3.0, k2.data(), psi.data());
    axpy(m, dt / 3.0, k3.data(), psi.data());
    axpy(m, dt / 6.0, k4.data(), psi.data());
}

struct ReducedPieces {
    double r_ee, rdot_ee;
    cd r_eg, rdot_eg;
};

// rho and rho_dot (partial trace of -i [H, |psi><psi|]) from the sector
// amplitudes and the already-computed phi = -i H psi.
ReducedPieces reduce(const SectorState& psi, const std::vector<cd>& phi, cd phi_dec) {
    ReducedPieces out{};
    const std::size_t n1 = psi.n1;
    out.r_ee = nrm2sq(n1, psi.amplitudes.data());
    out.r_eg = psi.amplitudes[psi.init_index] * std::conj(psi.decoupled);
    out.rdot_ee = 2.0 * dotc(n1, psi.amplitudes.data(), phi.data()).real();
    out.rdot_eg = phi[psi.init_index] * std::conj(psi.decoupled) +
                  psi.amplitudes[psi.init_index] * std::conj(phi_dec);
    return out;
}

} // namespace

void DotParams::validate() const {
    if (n1 < 1 || n2 < 1) throw contract_violation("dot model needs n1, n2 >= 1");
    if (delta_eps < 0.0 || coupling < 0.0)
        throw contract_violation("dot model needs delta_eps >= 0 and coupling >= 0");
}

double SectorState::norm_sq() const {
    return nrm2sq(amplitudes.size(), amplitudes.data()) + std::norm(decoupled);
}

std::size_t init_level_index(const DotParams& p) { return (p.n1 - 1) / 2; }

double decoupled_energy(const DotParams& p) {
    return -0.5 * p.delta_e + p.delta_eps * static_cast<double>(init_level_index(p) + 1) / p.n1;
}

double sector_energy_shift(const DotParams& p) {
    return 0.5 * p.delta_e + 0.5 * p.delta_eps;
}

ComplexMatrix build_hamiltonian(const DotParams& p) {
    p.validate();
    const std::size_t m = p.n1 + p.n2;
    ComplexMatrix h(m, m);
    for (std::size_t i = 0; i < p.n1; ++i) h(i, i) = band1_energy(p, i);
    for (std::size_t j = 0; j < p.n2; ++j) h(p.n1 + j, p.n1 + j) = band2_energy(p, j);
    const ComplexMatrix b = coupling_block(p);
    for (std::size_t i = 0; i < p.n1; ++i)
        for (std::size_t j = 0; j < p.n2; ++j) {
            h(i, p.n1 + j) = b(i, j);
            h(p.n1 + j, i) = std::conj(b(i, j));
        }
    return h;
}

ComplexMatrix dot_h_sys(const DotParams& p) {
    ComplexMatrix h(2, 2);
    h(0, 0) = 0.5 * p.delta_e;
    h(1, 1) = -0.5 * p.delta_e;
    return h;
}

std::vector<SectorState> propagate(const SectorState& psi0, const ComplexMatrix& h,
                                   double t_final, double dt) {
    const std::size_t m = psi0.amplitudes.size();
    if (!h.square() || h.rows() != m)
        throw contract_violation("propagate: Hamiltonian does not match state dimension");
    if (!(dt > 0.0) || !(t_final >= 0.0)) throw config_error("propagate: need dt > 0");

    // stability margin on dt ||H||_op, estimated by power iteration
    std::mt19937_64 rng(99);
    std::vector<cd> v(m), w(m);
    for (cd& x : v) x = complex_gaussian(rng);
    double norm_est = 0.0;
    for (int it = 0; it < 25; ++it) {
        gemv(m, m, h.data(), v.data(), w.data());
        norm_est = std::sqrt(nrm2sq(m, w.data()));
        if (norm_est < 1e-300) break;
        for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / norm_est;
    }
    if (dt * norm_est > 0.1)
        throw config_error("propagate: dt too large for stability margin, need dt <= " +
                           std::to_string(0.1 / std::max(norm_est, 1e-300)));

    const auto apply_dense = [&](const cd* in, cd* out) { gemv(m, m, h.data(), in, out); };

    const int n_steps = static_cast<int>(std::ceil(t_final / dt - 1e-12));
    std::vector<SectorState> out;
    out.reserve(n_steps + 1);
    SectorState psi = psi0;
    out.push_back(psi);

    std::vector<cd> k1(m), k2(m), k3(m), k4(m), tmp(m);
    const cd dec0 = psi0.decoupled;
    for (int s = 1; s <= n_steps; ++s) {
        const double step = std::min(dt, t_final - (s - 1) * dt);
        rk4_step(apply_dense, psi.amplitudes, step, k1, k2, k3, k4, tmp);
        psi.time = std::min(psi.time + dt, t_final);
        psi.decoupled = dec0 * std::exp(cd(0.0, -psi.e_decoupled * psi.time));
        const double norm = std::sqrt(psi.norm_sq());
        for (cd& a : psi.amplitudes) a /= norm;
        psi.decoupled /= norm;
        out.push_back(psi);
    }
    return out;
}

DensityMatrix reduced_density(const SectorState& psi) {
    const double n2tot = psi.norm_sq();
    if (std::abs(n2tot - 1.0) > 1e-8)
        throw contract_violation("reduced_density requires a unit-norm state");
    ComplexMatrix rho(2, 2);
    const double r_ee = nrm2sq(psi.n1, psi.amplitudes.data());
    rho(0, 0) = r_ee;
    rho(1, 1) = nrm2sq(psi.n2, psi.amplitudes.data() + psi.n1) + std::norm(psi.decoupled);
    rho(0, 1) = psi.amplitudes[psi.init_index] * std::conj(psi.decoupled);
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityMatrix(std::move(rho));
}

ComplexMatrix effective_dissipator(const SectorState& psi, const ComplexMatrix& h_total,
                                   const ComplexMatrix& h_sys) {
    const std::size_t m = psi.amplitudes.size();
    if (h_total.rows() != m) throw contract_violation("effective_dissipator: dim mismatch");
    if (h_sys.rows() != 2 || h_sys.cols() != 2)
        throw contract_violation("effective_dissipator: H_sys must be 2x2");

    std::vector<cd> phi(m);
    gemv(m, m, h_total.data(), psi.amplitudes.data(), phi.data());
    for (cd& x : phi) x *= cd(0.0, -1.0);
    const cd phi_dec = cd(0.0, -psi.e_decoupled) * psi.decoupled;

    const ReducedPieces rp = reduce(psi, phi, phi_dec);

    ComplexMatrix rho(2, 2);
    rho(0, 0) = rp.r_ee;
    rho(1, 1) = 1.0 - rp.r_ee;
    rho(0, 1) = rp.r_eg;
    rho(1, 0) = std::conj(rp.r_eg);

    ComplexMatrix dis(2, 2);
    dis(0, 0) = rp.rdot_ee;
    dis(1, 1) = -rp.rdot_ee;
    dis(0, 1) = rp.rdot_eg;
    dis(1, 0) = std::conj(rp.rdot_eg);
    dis += cd(0.0, 1.0) * commutator(h_sys, rho);
    return dis;
}

Trajectory dot_trajectory(const DotParams& params, DotInitialState kind, double t_final,
                          int n_steps, double h_spread_value, DotRunStats* stats,
                          double dt_internal) {
    params.validate();
    if (n_steps < 2) throw contract_violation("dot_trajectory requires n_steps >= 2");

    const double shift = sector_energy_shift(params);
    const SectorOp op = make_sector_op(params, shift);
    const std::size_t m = params.n1 + params.n2;
    const double h_norm = op.opnorm_estimate();

    SectorState psi;
    psi.n1 = params.n1;
    psi.n2 = params.n2;
    psi.init_index = init_level_index(params);
    psi.amplitudes.assign(m, cd(0.0, 0.0));
    psi.e_decoupled = decoupled_energy(params);
    if (kind == DotInitialState::excited) {
        psi.amplitudes[psi.init_index] = 1.0;
    } else {
        psi.amplitudes[psi.init_index] = 1.0 / std::sqrt(2.0);
        psi.decoupled = 1.0 / std::sqrt(2.0);
    }
    const cd dec0 = psi.decoupled;
    const double e_dec_shifted = psi.e_decoupled - shift;
    const bool diagonal = (kind == DotInitialState::excited);

    const double sample_dt = t_final / (n_steps - 1);
    double dt_cap = (dt_internal > 0.0) ? dt_internal : 0.08 / std::max(h_norm, 1e-12);
    const int n_sub = std::max(1, static_cast<int>(std::ceil(sample_dt / dt_cap - 1e-12)));
    const double dt = sample_dt / n_sub;
    if (dt * h_norm > 0.1)
        throw config_error("dot_trajectory: internal dt too large, need dt <= " +
                           std::to_string(0.1 / h_norm));

    Trajectory traj;
    traj.times.reserve(n_steps);
    std::vector<cd> k1(m), k2(m), k3(m), k4(m), tmp(m), phi(m);
    const auto apply = [&op](const cd* in, cd* out) { op.apply(in, out); };

    double e0 = 0.0;
    DotRunStats local{};

    for (int s = 0; s < n_steps; ++s) {
        const double t = sample_dt * s;
        if (s > 0) {
            for (int sub = 0; sub < n_sub; ++sub)
                rk4_step(apply, psi.amplitudes, dt, k1, k2, k3, k4, tmp);
            psi.time = t;
            psi.decoupled = dec0 * std::exp(cd(0.0, -e_dec_shifted * t));
            const double norm = std::sqrt(psi.norm_sq());
            local.norm_drift = std::max(local.norm_drift, std::abs(norm - 1.0));
            for (cd& a : psi.amplitudes) a /= norm;
            psi.decoupled /= norm;
        }

        op.apply(psi.amplitudes.data(), phi.data());
        const double energy =
            dotc(m, psi.amplitudes.data(), phi.data()).real() +
            e_dec_shifted * std::norm(psi.decoupled);
        if (s == 0)
            e0 = energy;
        else
            local.energy_drift =
                std::max(local.energy_drift, std::abs(energy - e0) / std::max(1.0, std::abs(e0)));

        for (cd& x : phi) x *= cd(0.0, -1.0);
        const cd phi_dec = cd(0.0, -e_dec_shifted) * psi.decoupled;
        const ReducedPieces rp = reduce(psi, phi, phi_dec);

        ComplexMatrix rho(2, 2);
        rho(0, 0) = rp.r_ee;
        rho(1, 1) = 1.0 - rp.r_ee;
        rho(0, 1) = rp.r_eg;
        rho(1, 0) = std::conj(rp.r_eg);

        // generator L = rho_dot; dissipator D = L + i [H_sys, rho] with
        // H_sys = (delta_e/2) sigma_z, so (i[H_sys, rho])_eg = i delta_e rho_eg
        ComplexMatrix gen(2, 2);
        gen(0, 0) = rp.rdot_ee;
        gen(1, 1) = -rp.rdot_ee;
        gen(0, 1) = rp.rdot_eg;
        gen(1, 0) = std::conj(rp.rdot_eg);

        ComplexMatrix dis = gen;
        const cd d_eg = rp.rdot_eg + cd(0.0, params.delta_e) * rp.r_eg;
        dis(0, 1) = d_eg;
        dis(1, 0) = std::conj(d_eg);

        const double opn =
            std::sqrt(rp.rdot_ee * rp.rdot_ee + std::norm(d_eg));  // 2x2 traceless Hermitian

        traj.times.push_back(t);
        traj.states.emplace_back(std::move(rho));
        traj.dissipators.emplace_back(std::move(dis));
        traj.dissipator_opnorms.push_back(opn);
        traj.hamiltonian_spreads.push_back(diagonal ? 0.0 : h_spread_value);
        traj.generators.emplace_back(std::move(gen));
    }

    if (stats != nullptr) *stats = local;
    return traj;
}

} // namespace qsl
