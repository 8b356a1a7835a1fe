#include "qsl/trajectory.hpp"

#include <cmath>

namespace qsl {

void Trajectory::validate() const {
    const std::size_t n = times.size();
    if (states.size() != n || dissipators.size() != n || dissipator_opnorms.size() != n ||
        hamiltonian_spreads.size() != n || generators.size() != n)
        throw contract_violation("trajectory arrays have unequal lengths");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(times[i + 1] > times[i]))
            throw contract_violation("trajectory time grid is not increasing");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(dissipators[i].trace()) > 1e-9)
            throw contract_violation("dissipator is not traceless");
        // states were validated on construction (DensityMatrix invariants)
    }
}

} // namespace qsl
