#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "ncsym/error.hpp"

namespace ncsym {

using Scalar = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative threshold on sigma_min / sigma_max below which a matrix is treated as singular.
inline constexpr double kSingularityThreshold = 1e-12;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
    return a.allFinite();
}

template <typename Derived>
Eigen::VectorXd singular_values(const Eigen::MatrixBase<Derived>& a) {
    if (!all_finite(a)) throw InvalidInput("singular_values: non-finite entry");
    if (a.size() == 0) return Eigen::VectorXd();
    using Plain = typename Derived::PlainObject;
    Eigen::JacobiSVD<Plain> svd(a.eval());
    return svd.singularValues();
}

/// Largest singular value (operator 2-norm). Empty matrices have norm 0.
template <typename Derived>
double op_norm(const Eigen::MatrixBase<Derived>& a) {
    const Eigen::VectorXd s = singular_values(a);
    return s.size() == 0 ? 0.0 : s(0);
}

template <typename Derived>
double smallest_singular_value(const Eigen::MatrixBase<Derived>& a) {
    const Eigen::VectorXd s = singular_values(a);
    return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

/// Block-diagonal diag(A, B); either operand may be empty.
template <typename DerivedA, typename DerivedB>
auto direct_sum(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using S = typename DerivedA::Scalar;
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out =
        Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

/// Kronecker product with (A (x) B)(i*rB + k, j*cB + l) = A(i,j) * B(k,l).
///
/// Every tensor expression in the library (1_n (x) p, x (x) U, g^j (x) T^j, x_P)
/// uses this ordering: the matrix-level index is the outer one.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using S = typename DerivedA::Scalar;
    const Eigen::Index rb = b.rows();
    const Eigen::Index cb = b.cols();
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

/// 1_n (x) B without forming the dense identity.
template <typename Derived>
auto kron_identity(Eigen::Index n, const Eigen::MatrixBase<Derived>& b) {
    using S = typename Derived::Scalar;
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out =
        Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(n * b.rows(), n * b.cols());
    for (Eigen::Index i = 0; i < n; ++i) out.block(i * b.rows(), i * b.cols(), b.rows(), b.cols()) = b;
    return out;
}

/// Inverse with a singularity check: throws SingularMatrix when
/// sigma_min <= kSingularityThreshold * sigma_max.
CMatrix inverse(const CMatrix& a);

/// Solves A X = B with the same singularity semantics as `inverse`.
CMatrix solve(const CMatrix& a, const CMatrix& b);

CMatrix identity(Eigen::Index n);

/// Haar-distributed unitary from the seeded complex Ginibre ensemble (QR with phase fix).
CMatrix random_unitary(std::uint64_t seed, Eigen::Index n);

/// Seeded complex Gaussian rescaled to operator norm r * rho, rho in (0, 1] drawn from the same stream.
CMatrix random_strict_contraction(std::uint64_t seed, Eigen::Index n, double r);

/// Rectangular version of random_strict_contraction.
CMatrix random_contraction(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols, double r);
/// Complex Gaussian matrix with unit-variance entries.
CMatrix random_gaussian(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols);

/// Conjugate-transposed residual ||A^* A - I||.
double unitarity_defect(const CMatrix& a);

}  // namespace ncsym
