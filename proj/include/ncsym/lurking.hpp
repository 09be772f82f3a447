#pragma once

#include <vector>

#include "ncsym/mat.hpp"
#include "ncsym/ncfun.hpp"

namespace ncsym {

/// Provenance of a collected vector: (e_k^* (x) 1) f(x_sample) e_xi.
struct VectorLabel {
    Eigen::Index k = 0;
    Eigen::Index xi = 0;
    std::size_t sample = 0;
};

struct VectorFamily {
    Eigen::Index ambient_dim = 0;
    std::vector<CVector> vectors;
    std::vector<VectorLabel> labels;

    std::size_t size() const noexcept { return vectors.size(); }
    /// ambient_dim x size() matrix with the vectors as columns.
    CMatrix stacked() const;
    void push_back(CVector v, VectorLabel label);
};

/// Slices p_{k xi x} = (e_k^* (x) 1_K) f(x) e_xi for every sample x (level n), k < n, xi < n.
/// `f(x)` must be (n * k_dim) x n.
VectorFamily collect_vectors(const GradedMap& f, const std::vector<GradedPoint>& samples, Eigen::Index k_dim);

struct LurkingOptions {
    /// Hypothesis check: ||Gram_P - Gram_Q|| <= gram_tol * max(1, ||Gram_P||).
    double gram_tol = 1e-8;
    /// Singular values below rank_tol * sigma_max are treated as zero when fixing span{p}.
    double rank_tol = 1e-10;
};

struct IsometrySolution {
    CMatrix J;
    Eigen::Index rank = 0;
    double gram_residual = 0.0;
    bool unitary = false;
};

/// Partial isometry J : K1 -> K2 with J p_a = q_a, initial space span{p_a}.
///
/// Construction: thin SVD P = U_r S V_r^*, J U_r = Q V_r S^{-1}, re-orthonormalised by its polar
/// factor. With pad_to_unitary the orthogonal complements are matched in SVD order; this needs
/// equal redundant dimensions (dim K1 - rank == dim K2 - rank), otherwise PaddingError.
/// Throws HypothesisViolation when the Gram matrices differ beyond tolerance.
IsometrySolution solve_lurking(const VectorFamily& p, const VectorFamily& q, bool pad_to_unitary,
                               const LurkingOptions& options = {});

/// Orthogonal projector onto the span of the columns of `a`, rank decided by `rank_tol`.
CMatrix range_projector(const CMatrix& a, double rank_tol = 1e-10);

}  // namespace ncsym
