#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Low-level complex-double array kernels used by the matrix layer and the
// state-vector propagator. A scalar reference implementation always exists;
// on x86-64 an AVX2+FMA variant is selected at runtime when the CPU supports
// it. The two are equivalence-tested against each other.

namespace qsl::kernels {

using cd = std::complex<double>;

struct Backend {
    // y[0..rows) = A (rows x cols, row-major) * x
    void (*gemv)(std::size_t rows, std::size_t cols, const cd* a, const cd* x, cd* y);
    // y += alpha * x
    void (*axpy)(std::size_t n, cd alpha, const cd* x, cd* y);
    // sum conj(x[i]) * y[i]
    cd (*dotc)(std::size_t n, const cd* x, const cd* y);
    // sum |x[i]|^2
    double (*nrm2sq)(std::size_t n, const cd* x);
    const char* name;
};

const Backend& scalar_backend();
#if defined(__x86_64__)
const Backend& avx2_backend();
#endif

// Active backend; picked once per process. QSL_KERNEL=scalar|avx2 overrides.
const Backend& active();

inline void gemv(std::size_t rows, std::size_t cols, const cd* a, const cd* x, cd* y) {
    active().gemv(rows, cols, a, x, y);
}
inline void axpy(std::size_t n, cd alpha, const cd* x, cd* y) { active().axpy(n, alpha, x, y); }
inline cd dotc(std::size_t n, const cd* x, const cd* y) { return active().dotc(n, x, y); }
inline double nrm2sq(std::size_t n, const cd* x) { return active().nrm2sq(n, x); }

} // namespace qsl::kernels
