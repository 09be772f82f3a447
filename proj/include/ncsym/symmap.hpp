#pragma once

#include <utility>
#include <vector>

#include "ncsym/mat.hpp"
#include "ncsym/ncfun.hpp"

namespace ncsym {

/// Truncated matrix power series sum_j g^j z^j at level n, with a certified bound on
/// the sup-norm of the discarded tail.
struct DiscAlgElem {
    Eigen::Index level = 0;
    std::vector<CMatrix> coeffs;
    double tail_bound = 0.0;

    DiscAlgElem() = default;
    DiscAlgElem(std::vector<CMatrix> coefficients, double tail = 0.0);

    /// Index of the last nonzero coefficient, -1 when all vanish.
    int degree() const;
    /// sum_j g^j z^j over the stored coefficients.
    CMatrix value_at(Scalar z) const;
    /// s^{-1} g s coefficientwise.
    DiscAlgElem conjugated(const CMatrix& s) const;
    DiscAlgElem scaled(Scalar c) const;
};

DiscAlgElem direct_sum(const DiscAlgElem& g, const DiscAlgElem& h);

/// Scalar polynomial sum_j c_j z^j at level 1.
DiscAlgElem scalar_series(const std::vector<Scalar>& coefficients);

struct SPoint {
    CMatrix u;
    CMatrix v;
    DiscAlgElem series;
};

/// u = (x1 + x2)/2, v = (x1 - x2)/2
std::pair<CMatrix, CMatrix> uv(const GradedPoint& x);

/// Smallest N >= 2 with tail bound <= 1e-12, capped at 512.
int default_truncation(const GradedPoint& x);

/// Coefficients (u, v^2, vuv, ..., v u^{N-2} v) and the geometric tail bound
/// ||v||^2 ||u||^{N-1} / (1 - ||u||). Throws DomainError outside the biball.
SPoint s_map(const GradedPoint& x, int truncation);
SPoint s_map(const GradedPoint& x);

/// Generating function u + v z (1 - u z)^{-1} v.
CMatrix s_gen(const GradedPoint& x, Scalar z);

/// [u v; v u]
CMatrix q_mat(const GradedPoint& x);

/// W = (1/sqrt 2) [1 1; 1 -1] at level n, so that q_mat(x) = W diag(x1, x2) W.
CMatrix q_conjugator(Eigen::Index n);

/// max over `grid_size` equispaced points of the unit circle of ||g(z)||, plus tail_bound.
/// Requires grid_size >= 64.
double sup_norm(const DiscAlgElem& g, int grid_size = 256);

enum class Membership { inside, outside, undecided };

/// Membership in the open unit ball of the disc algebra, reported with its uncertainty.
/// `grid_estimate` is the boundary-grid maximum; the true sup-norm is bracketed by
/// [grid_estimate - tail_bound, grid_estimate + tail_bound] up to the grid gap.
struct OmegaMembership {
    double grid_estimate = 0.0;
    double upper_estimate = 0.0;
    double gap = 0.0;
    Membership status = Membership::undecided;
};

OmegaMembership omega_membership(const DiscAlgElem& g, int grid_size = 256);

}  // namespace ncsym
