#pragma once

#include <vector>

#include "qsl/matrix.hpp"

namespace qsl {

// Time grid plus per-time states and generator pieces. Parallel arrays,
// immutable after construction by a model builder.
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<ComplexMatrix> dissipators;       // D_t(rho_t)
    std::vector<double> dissipator_opnorms;       // ||D_t(rho_t)||_op
    std::vector<double> hamiltonian_spreads;      // ||H_t||_Delta (0 when [H,rho] == 0)
    std::vector<ComplexMatrix> generators;        // full L_t(rho_t) = rho_dot

    std::size_t size() const { return times.size(); }

    // Equal-length arrays, traceless dissipators, valid states.
    void validate() const;
};

} // namespace qsl
