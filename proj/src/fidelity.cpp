#include "qsl/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "qsl/eig.hpp"

namespace qsl {

namespace {

void check_dims(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw contract_violation("fidelity: dimension mismatch");
}

} // namespace

FidelityValue make_fidelity(double raw) {
    if (raw < -1e-9 || raw > 1.0 + 1e-9)
        throw contract_violation("fidelity value outside [0,1] beyond tolerance");
    const double v = std::clamp(raw, 0.0, 1.0);
    return FidelityValue{v, std::acos(v)};
}

FidelityValue relative_purity_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    check_dims(rho1, rho2);
    const double overlap = matmul(rho1.matrix(), rho2.matrix()).trace().real();
    const double ref_hs = hs_norm(rho2.matrix());
    return make_fidelity(std::sqrt(std::max(0.0, overlap / ref_hs)));
}

FidelityValue bures_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    check_dims(rho1, rho2);
    const ComplexMatrix prod = matmul(psd_sqrt(rho1.matrix()), psd_sqrt(rho2.matrix()));
    return make_fidelity(trace_norm(prod));
}

FidelityValue symmetric_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    check_dims(rho1, rho2);
    const ComplexMatrix prod = matmul(psd_sqrt(rho1.matrix()), psd_sqrt(rho2.matrix()));
    const double denom = std::sqrt(hs_norm(rho1.matrix()) * hs_norm(rho2.matrix()));
    return make_fidelity(hs_norm(prod) / denom);
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    check_dims(rho1, rho2);
    return 0.5 * trace_norm(rho1.matrix() - rho2.matrix());
}

} // namespace qsl
