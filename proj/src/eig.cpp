#include "qsl/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsl {

namespace {

double off_diag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double fro_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix& input) {
    if (!input.square()) throw contract_violation("eigensystem requires a square matrix");
    const double scale = std::max(1.0, input.max_abs());
    if (input.hermiticity_defect() > 1e-10 * scale)
        throw contract_violation("eigensystem requires a Hermitian matrix");

    const std::size_t n = input.rows();
    // work on the symmetrized copy
    ComplexMatrix a = input;
    ComplexMatrix adj = a.adjoint();
    a += adj;
    a *= 0.5;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double fro = std::max(fro_norm(a), 1e-300);
    const double target = 5e-17 * fro;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps && off_diag_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cd apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-18 * fro) continue;
                const cd phase = apq / b;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (app - aqq) / (2.0 * b);
                // annihilation condition for this rotation: t^2 - 2 tau t - 1 = 0,
                // smaller-magnitude root for stability
                double t;
                if (tau >= 0.0)
                    t = -1.0 / (tau + std::sqrt(tau * tau + 1.0));
                else
                    t = 1.0 / (-tau + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cd eim = std::conj(phase);  // e^{-i phi}

                // A <- A G, columns p and q
                for (std::size_t k = 0; k < n; ++k) {
                    const cd akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * eim * akq;
                    a(k, q) = s * akp + c * eim * akq;
                }
                // A <- G^dagger A, rows p and q
                for (std::size_t k = 0; k < n; ++k) {
                    const cd apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                // V <- V G
                for (std::size_t k = 0; k < n; ++k) {
                    const cd vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * eim * vkq;
                    v(k, q) = s * vkp + c * eim * vkq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&vals](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });

    Eigensystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = vals[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    const bool tall = a.rows() >= a.cols();
    const ComplexMatrix adj = a.adjoint();
    const ComplexMatrix gram = tall ? matmul(adj, a) : matmul(a, adj);
    Eigensystem es = hermitian_eigensystem(gram);
    std::vector<double> sv(es.values.size());
    // Gram eigenvalues below n*eps*lambda_max are round-off from forming
    // A^dagger A; their square roots would pollute trace-norm sums at the
    // 1e-8 level, so anything under the noise floor counts as zero.
    const double lead = std::sqrt(std::max(0.0, es.values.empty() ? 0.0 : es.values.front()));
    const double noise = 8.0 * lead * std::sqrt(static_cast<double>(sv.size()) * 2.3e-16);
    for (std::size_t i = 0; i < sv.size(); ++i) {
        const double s = std::sqrt(std::max(0.0, es.values[i]));
        sv[i] = s > noise ? s : 0.0;
    }
    return sv;  // descending since eigenvalues are
}

double schatten_norm(const ComplexMatrix& a, double p) {
    if (p < 1.0) throw std::domain_error("Schatten norm requires p >= 1");
    const std::vector<double> sv = singular_values(a);
    const double top = sv.empty() ? 0.0 : sv.front();
    if (top == 0.0) return 0.0;
    double acc = 0.0;
    for (double s : sv) acc += std::pow(s / top, p);
    return top * std::pow(acc, 1.0 / p);
}

double schatten_norm_op(const ComplexMatrix& a) {
    const std::vector<double> sv = singular_values(a);
    return sv.empty() ? 0.0 : sv.front();
}

double spread_norm(const ComplexMatrix& a) {
    if (!a.square()) throw contract_violation("spread norm requires a square matrix");
    const std::vector<double> sv = singular_values(a);
    return sv.front() - sv.back();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    Eigensystem es = hermitian_eigensystem(a);
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cd acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double root = std::sqrt(std::max(0.0, es.values[k]));
                acc += es.vectors(i, k) * root * std::conj(es.vectors(j, k));
            }
            out(i, j) = acc;
        }
    return out;
}

double smallest_eigenvalue(const ComplexMatrix& hermitian) {
    Eigensystem es = hermitian_eigensystem(hermitian);
    return es.values.back();
}

} // namespace qsl
