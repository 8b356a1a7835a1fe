#include "qsl/kernels.hpp"

namespace qsl::kernels {

namespace {

void gemv_scalar(std::size_t rows, std::size_t cols, const cd* a, const cd* x, cd* y) {
    for (std::size_t i = 0; i < rows; ++i) {
        const cd* row = a + i * cols;
        double acc_re = 0.0, acc_im = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            const double ar = row[j].real(), ai = row[j].imag();
            const double xr = x[j].real(), xi = x[j].imag();
            acc_re += ar * xr - ai * xi;
            acc_im += ar * xi + ai * xr;
        }
        y[i] = cd(acc_re, acc_im);
    }
}

void axpy_scalar(std::size_t n, cd alpha, const cd* x, cd* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cd(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

cd dotc_scalar(std::size_t n, const cd* x, const cd* y) {
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        acc_re += xr * yr + xi * yi;
        acc_im += xr * yi - xi * yr;
    }
    return cd(acc_re, acc_im);
}

double nrm2sq_scalar(std::size_t n, const cd* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

} // namespace

const Backend& scalar_backend() {
    static const Backend b{gemv_scalar, axpy_scalar, dotc_scalar, nrm2sq_scalar, "scalar"};
    return b;
}

} // namespace qsl::kernels
