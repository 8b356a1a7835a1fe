#include "qsl/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qsl/eig.hpp"
#include "qsl/kernels.hpp"

namespace qsl {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cd(0.0, 0.0)) {
    if (rows == 0 || cols == 0) throw contract_violation("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw contract_violation("matrix dimensions must be positive");
    if (data_.size() != rows * cols)
        throw contract_violation("entry count does not match dimensions");
    for (const cd& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw contract_violation("non-finite matrix entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

cd ComplexMatrix::trace() const {
    if (!square()) throw contract_violation("trace of non-square matrix");
    cd t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cd& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!square()) throw contract_violation("hermiticity defect of non-square matrix");
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw contract_violation("dimension mismatch in matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw contract_violation("dimension mismatch in matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd scale) {
    for (cd& v : data_) v *= scale;
    return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw contract_violation("dimension mismatch in matmul");
    ComplexMatrix bt = b.adjoint();  // rows of bt are conj of columns of b
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            // dotc(conj(col_j of b), row_i of a) = sum_k b(k,j) a(i,k)
            out(i, j) = kernels::dotc(a.cols(), bt.data() + j * bt.cols(),
                                      a.data() + i * a.cols());
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw contract_violation("commutator requires equal square dimensions");
    return matmul(a, b) - matmul(b, a);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (!mat_.square()) throw contract_violation("density matrix must be square");
    if (mat_.hermiticity_defect() > kHermTol)
        throw contract_violation("density matrix is not Hermitian within 1e-10");
    // re-symmetrize to absorb round-off
    ComplexMatrix adj = mat_.adjoint();
    mat_ += adj;
    mat_ *= 0.5;
    const double tr_err = std::abs(mat_.trace() - cd(1.0));
    if (tr_err > kTraceTol) throw contract_violation("density matrix trace differs from 1");
    if (smallest_eigenvalue(mat_) < -kPsdTol)
        throw contract_violation("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const std::vector<cd>& amplitudes) {
    const std::size_t n = amplitudes.size();
    double norm2 = 0.0;
    for (const cd& a : amplitudes) norm2 += std::norm(a);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
    ComplexMatrix m = ComplexMatrix::identity(n);
    m *= cd(1.0 / static_cast<double>(n));
    return DensityMatrix(std::move(m));
}

DensityMatrix partial_trace_env(const DensityMatrix& rho_total, std::size_t sys_dim,
                                std::size_t env_dim) {
    if (rho_total.dim() != sys_dim * env_dim)
        throw contract_violation("partial trace: dimension factorization mismatch");
    ComplexMatrix out(sys_dim, sys_dim);
    const ComplexMatrix& rho = rho_total.matrix();
    for (std::size_t s1 = 0; s1 < sys_dim; ++s1)
        for (std::size_t s2 = 0; s2 < sys_dim; ++s2) {
            cd acc = 0.0;
            for (std::size_t e = 0; e < env_dim; ++e)
                acc += rho(s1 * env_dim + e, s2 * env_dim + e);
            out(s1, s2) = acc;
        }
    return DensityMatrix(std::move(out));
}

} // namespace qsl
