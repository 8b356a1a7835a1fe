#pragma once

#include <string>
#include <vector>

#include "qsl/matrix.hpp"

namespace qsl {

struct Eigensystem {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // columns, unitary; A = V diag(values) V^dagger
};

// Cyclic Jacobi for Hermitian matrices. Throws contract_violation for
// non-square or non-Hermitian (defect > 1e-10 relative) input.
Eigensystem hermitian_eigensystem(const ComplexMatrix& a);

// Descending singular values, length min(rows, cols). Computed from the
// eigensystem of the smaller Gram matrix.
std::vector<double> singular_values(const ComplexMatrix& a);

// Schatten p-norm, p >= 1. schatten_norm_op is the p -> infinity limit.
double schatten_norm(const ComplexMatrix& a, double p);
double schatten_norm_op(const ComplexMatrix& a);
inline double trace_norm(const ComplexMatrix& a) { return schatten_norm(a, 1.0); }
inline double hs_norm(const ComplexMatrix& a) { return schatten_norm(a, 2.0); }

// sigma_1 - sigma_N of a square matrix, N = dimension (zeros included).
double spread_norm(const ComplexMatrix& a);

// Hermitian PSD square root via eigensystem, negative round-off eigenvalues
// clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

double smallest_eigenvalue(const ComplexMatrix& hermitian);

} // namespace qsl
