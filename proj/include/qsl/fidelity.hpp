#pragma once

#include "qsl/matrix.hpp"

namespace qsl {

// Fidelity in [0,1] together with its angle arccos(value).
struct FidelityValue {
    double value;
    double angle;
};

// Builds a FidelityValue, checking 0 <= v <= 1 + 1e-9 and clamping to [0,1].
// Values beyond the tolerance raise contract_violation instead of clamping.
FidelityValue make_fidelity(double raw);

// F_R(rho1, rho2) = sqrt(Tr{rho1 rho2} / ||rho2||_HS). Asymmetric: rho2 is
// the reference whose Hilbert-Schmidt norm divides.
FidelityValue relative_purity_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

// F_B(rho1, rho2) = ||sqrt(rho1) sqrt(rho2)||_tr, symmetric.
FidelityValue bures_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

// F'(rho1, rho2) = ||sqrt(rho1) sqrt(rho2)||_HS / sqrt(||rho1||_HS ||rho2||_HS).
FidelityValue symmetric_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

// (1/2) ||rho1 - rho2||_tr
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

} // namespace qsl
