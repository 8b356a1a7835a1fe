#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qsl/errors.hpp"

namespace qsl {

using cd = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diag(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const cd* data() const { return data_.data(); }
    cd* data() { return data_.data(); }

    ComplexMatrix adjoint() const;
    cd trace() const;
    double max_abs() const;
    double hermiticity_defect() const;  // max |A - A^dagger| entry

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cd scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cd s) { return a *= s; }
    friend ComplexMatrix operator*(cd s, ComplexMatrix a) { return a *= s; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cd> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Hermitian, PSD, unit-trace matrix. Construction re-symmetrizes ((rho+rho^dag)/2)
// to absorb integrator round-off, then validates.
class DensityMatrix {
public:
    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kPsdTol = 1e-9;

    explicit DensityMatrix(ComplexMatrix m);

    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }
    const cd& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    static DensityMatrix pure(const std::vector<cd>& amplitudes);
    static DensityMatrix maximally_mixed(std::size_t n);

private:
    ComplexMatrix mat_;
};

// Trace out the environment factor; system is the slow index
// (total index = sys * env_dim + env).
DensityMatrix partial_trace_env(const DensityMatrix& rho_total, std::size_t sys_dim,
                                std::size_t env_dim);

} // namespace qsl
