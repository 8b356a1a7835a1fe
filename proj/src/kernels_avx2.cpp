// AVX2+FMA variants of the complex kernels. Interleaved complex<double>
// layout: a __m256d holds two complex numbers [re0, im0, re1, im1].
// This translation unit is compiled with -mavx2 -mfma; it is only reached
// through the runtime dispatcher.

#if defined(__x86_64__)

#include "qsl/kernels.hpp"

#include <immintrin.h>

namespace qsl::kernels {

namespace {

inline __m256d neg(__m256d v) {
    return _mm256_xor_pd(v, _mm256_set1_pd(-0.0));
}

// [re, im] from a [c0re, c0im, c1re, c1im] accumulator
inline cd hsum_c(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return cd(out[0], out[1]);
}

void gemv_avx2(std::size_t rows, std::size_t cols, const cd* a, const cd* x, cd* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = reinterpret_cast<const double*>(a + i * cols);
        __m256d acc1 = _mm256_setzero_pd();  // a * dup(re x)
        __m256d acc2 = _mm256_setzero_pd();  // swap(a) * dup(im x)
        std::size_t j = 0;
        const std::size_t vec_end = (cols / 2) * 2;
        for (; j < vec_end; j += 2) {
            __m256d av = _mm256_loadu_pd(row + 2 * j);
            __m256d xv = _mm256_loadu_pd(xd + 2 * j);
            __m256d xre = _mm256_movedup_pd(xv);       // [xr, xr]
            __m256d xim = _mm256_permute_pd(xv, 0xF);  // [xi, xi]
            __m256d asw = _mm256_permute_pd(av, 0x5);  // [ai, ar]
            acc1 = _mm256_fmadd_pd(av, xre, acc1);     // [ar xr, ai xr]
            acc2 = _mm256_fmadd_pd(asw, xim, acc2);    // [ai xi, ar xi]
        }
        // acc1 -/+ acc2 lane-wise: [ar xr - ai xi, ai xr + ar xi]
        cd acc = hsum_c(_mm256_addsub_pd(acc1, acc2));
        for (; j < cols; ++j) {
            const cd aj = a[i * cols + j], xj = x[j];
            acc += cd(aj.real() * xj.real() - aj.imag() * xj.imag(),
                      aj.real() * xj.imag() + aj.imag() * xj.real());
        }
        y[i] = acc;
    }
}

void axpy_avx2(std::size_t n, cd alpha, const cd* x, cd* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    const std::size_t vec_end = (n / 2) * 2;
    for (; i < vec_end; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d t2 = _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0x5));  // [ai xi, ai xr]
        __m256d prod = _mm256_fmaddsub_pd(ar, xv, t2);  // [ar xr - ai xi, ar xi + ai xr]
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
    }
    for (; i < n; ++i) {
        const cd xi = x[i];
        y[i] += cd(alpha.real() * xi.real() - alpha.imag() * xi.imag(),
                   alpha.real() * xi.imag() + alpha.imag() * xi.real());
    }
}

cd dotc_avx2(std::size_t n, const cd* x, const cd* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc1 = _mm256_setzero_pd();  // dup(re x) * y        -> [xr yr, xr yi]
    __m256d acc2 = _mm256_setzero_pd();  // dup(im x) * swap(y)  -> [xi yi, xi yr]
    std::size_t i = 0;
    const std::size_t vec_end = (n / 2) * 2;
    for (; i < vec_end; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc1 = _mm256_fmadd_pd(_mm256_movedup_pd(xv), yv, acc1);
        acc2 = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0xF), _mm256_permute_pd(yv, 0x5), acc2);
    }
    // want [acc1_re + xi yi, acc1_im - xi yr]
    cd acc = hsum_c(_mm256_addsub_pd(acc1, neg(acc2)));
    for (; i < n; ++i) {
        const cd xi = x[i], yi = y[i];
        acc += cd(xi.real() * yi.real() + xi.imag() * yi.imag(),
                  xi.real() * yi.imag() - xi.imag() * yi.real());
    }
    return acc;
}

double nrm2sq_avx2(std::size_t n, const cd* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t vec_end = (n / 2) * 2;
    for (; i < vec_end; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    double total = out[0] + out[1];
    for (; i < n; ++i)
        total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return total;
}

} // namespace

const Backend& avx2_backend() {
    static const Backend b{gemv_avx2, axpy_avx2, dotc_avx2, nrm2sq_avx2, "avx2"};
    return b;
}

} // namespace qsl::kernels

#endif // __x86_64__
