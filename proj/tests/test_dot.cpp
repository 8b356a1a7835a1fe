#include <doctest.h>

#include <cmath>

#include "qsl/dot.hpp"
#include "qsl/eig.hpp"
#include "qsl/errors.hpp"

using namespace qsl;

namespace {

DotParams small_params() {
    DotParams p;
    p.n1 = 6;
    p.n2 = 6;
    p.delta_eps = 0.5;
    p.delta_e = 1.0;
    p.coupling = 0.1;
    p.seed = 7;
    return p;
}

SectorState initial_state(const DotParams& p, DotInitialState kind) {
    SectorState psi;
    psi.n1 = p.n1;
    psi.n2 = p.n2;
    psi.init_index = init_level_index(p);
    psi.amplitudes.assign(p.n1 + p.n2, cd(0.0, 0.0));
    psi.e_decoupled = decoupled_energy(p);
    if (kind == DotInitialState::excited) {
        psi.amplitudes[psi.init_index] = 1.0;
    } else {
        psi.amplitudes[psi.init_index] = 1.0 / std::sqrt(2.0);
        psi.decoupled = 1.0 / std::sqrt(2.0);
    }
    return psi;
}

} // namespace

TEST_CASE("hamiltonian construction is deterministic and Hermitian") {
    const DotParams p = small_params();
    const ComplexMatrix h1 = build_hamiltonian(p);
    ComplexMatrix h2 = build_hamiltonian(p);
    h2 -= h1;
    CHECK(h2.max_abs() == 0.0);  // same seed, bit-identical

    DotParams other = p;
    other.seed = 8;
    ComplexMatrix h3 = build_hamiltonian(other);
    h3 -= h1;
    CHECK(h3.max_abs() > 1e-3);

    ComplexMatrix anti = h1.adjoint();
    anti -= h1;
    CHECK(anti.max_abs() == 0.0);

    // diagonal follows the band ladders, block scales with the coupling
    CHECK(h1(0, 0).real() ==
          doctest::Approx(0.5 * p.delta_e + p.delta_eps / static_cast<double>(p.n1)));
    CHECK(h1(p.n1, p.n1).real() ==
          doctest::Approx(0.5 * p.delta_e + p.delta_eps / static_cast<double>(p.n2)));
    CHECK(h1(0, 1) == cd(0.0, 0.0));  // no intra-band coupling

    DotParams bad = p;
    bad.n1 = 0;
    CHECK_THROWS_AS(build_hamiltonian(bad), contract_violation);
}

TEST_CASE("single-level sector reduces to a Rabi oscillation") {
    DotParams p = small_params();
    p.n1 = 1;
    p.n2 = 1;
    p.coupling = 0.3;
    const ComplexMatrix h = build_hamiltonian(p);
    const double omega = std::abs(h(0, 1));  // resonant two-level Rabi frequency
    CHECK(omega > 0.05);

    const Trajectory traj = dot_trajectory(p, DotInitialState::excited, 6.0, 121, 0.0);
    traj.validate();
    for (std::size_t i = 0; i < traj.size(); i += 7) {
        const double t = traj.times[i];
        const double c = std::cos(omega * t);
        CHECK(traj.states[i](0, 0).real() == doctest::Approx(c * c).epsilon(1e-7));
        // no coherence channel: ||D||_op is just |rho_dot_ee|
        CHECK(traj.dissipator_opnorms[i] ==
              doctest::Approx(omega * std::abs(std::sin(2.0 * omega * t))).epsilon(1e-6));
    }
}

TEST_CASE("zero coupling freezes populations and kills the dissipator") {
    DotParams p = small_params();
    p.coupling = 0.0;

    const Trajectory exc = dot_trajectory(p, DotInitialState::excited, 4.0, 41, 0.0);
    for (std::size_t i = 0; i < exc.size(); ++i) {
        CHECK(exc.states[i](0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(exc.dissipator_opnorms[i] < 1e-12);
    }

    // free coherence precesses at delta_e, and D = rho_dot + i[H_sys, rho]
    // cancels exactly
    const Trajectory coh = dot_trajectory(p, DotInitialState::coherent, 4.0, 41, p.delta_e);
    for (std::size_t i = 0; i < coh.size(); ++i) {
        const double t = coh.times[i];
        const cd expected = 0.5 * std::exp(cd(0.0, -p.delta_e * t));
        CHECK(std::abs(coh.states[i](0, 1) - expected) < 1e-10);
        CHECK(coh.dissipator_opnorms[i] < 1e-9);
        CHECK(coh.hamiltonian_spreads[i] == doctest::Approx(p.delta_e));
    }
}

TEST_CASE("dense propagation path agrees with the block fast path") {
    const DotParams p = small_params();
    const ComplexMatrix h = build_hamiltonian(p);
    const ComplexMatrix h_sys = dot_h_sys(p);

    const double t_final = 2.0, dt = 0.01;
    const auto dense = propagate(initial_state(p, DotInitialState::coherent), h, t_final, dt);
    const Trajectory fast =
        dot_trajectory(p, DotInitialState::coherent, t_final, 21, p.delta_e, nullptr, dt);

    for (std::size_t s = 0; s < fast.size(); ++s) {
        const std::size_t k = s * 10;  // dense grid is 10x finer
        REQUIRE(k < dense.size());
        const DensityMatrix rho = reduced_density(dense[k]);
        ComplexMatrix diff = rho.matrix();
        diff -= fast.states[s].matrix();
        CHECK(diff.max_abs() < 1e-7);

        ComplexMatrix ddiff = effective_dissipator(dense[k], h, h_sys);
        ddiff -= fast.dissipators[s];
        CHECK(ddiff.max_abs() < 1e-6);
        CHECK(fast.dissipator_opnorms[s] ==
              doctest::Approx(schatten_norm_op(fast.dissipators[s])).epsilon(1e-9));
    }
}

TEST_CASE("propagate rejects a step size outside the stability margin") {
    const DotParams p = small_params();
    const ComplexMatrix h = build_hamiltonian(p);
    CHECK_THROWS_AS(propagate(initial_state(p, DotInitialState::excited), h, 1.0, 0.5),
                    config_error);
    CHECK_THROWS_AS(propagate(initial_state(p, DotInitialState::excited), h, 1.0, 0.0),
                    config_error);
}

TEST_CASE("grid refinement converges at 4th order") {
    DotParams p = small_params();
    p.n1 = 8;
    p.n2 = 8;
    const Trajectory coarse =
        dot_trajectory(p, DotInitialState::coherent, 3.0, 31, p.delta_e, nullptr, 0.02);
    const Trajectory fine =
        dot_trajectory(p, DotInitialState::coherent, 3.0, 31, p.delta_e, nullptr, 0.005);
    ComplexMatrix diff = coarse.states.back().matrix();
    diff -= fine.states.back().matrix();
    CHECK(diff.max_abs() < 1e-9);
}

TEST_CASE("trajectory invariants: trace, tracelessness, drift accounting") {
    const DotParams p = small_params();
    DotRunStats stats;
    const Trajectory traj =
        dot_trajectory(p, DotInitialState::excited, 8.0, 81, 0.0, &stats);
    CHECK_NOTHROW(traj.validate());
    CHECK(stats.norm_drift < 1e-9);
    CHECK(stats.energy_drift < 1e-9);
    for (std::size_t i = 0; i < traj.size(); i += 5) {
        CHECK(std::abs(traj.states[i].matrix().trace() - 1.0) < 1e-12);
        CHECK(std::abs(traj.dissipators[i].trace()) < 1e-12);
        CHECK(std::abs(traj.generators[i].trace()) < 1e-12);
        // excited kind commutes with H_sys at all times
        CHECK(traj.hamiltonian_spreads[i] == 0.0);
    }
}

TEST_CASE("reduced density demands a normalized state") {
    const DotParams p = small_params();
    SectorState psi = initial_state(p, DotInitialState::excited);
    psi.amplitudes[psi.init_index] = 2.0;
    CHECK_THROWS_AS(reduced_density(psi), contract_violation);
}
