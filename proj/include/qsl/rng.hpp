#pragma once

#include <cmath>
#include <complex>
#include <random>

namespace qsl {

// Standard complex Gaussian (Re and Im each N(0, 1/2)). Hand-rolled
// Box-Muller so seeded streams are bit-identical across platforms.
inline std::complex<double> standard_complex_gaussian(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

} // namespace qsl
