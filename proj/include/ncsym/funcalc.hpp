#pragma once

#include <optional>

#include "ncsym/mat.hpp"
#include "ncsym/ncfun.hpp"
#include "ncsym/symmap.hpp"

namespace ncsym {

/// How the Cesàro limit of the Fejér means is read off.
enum class FejerMode {
    /// Stop when successive Fejér means h_k agree to `tol`. Converges like O(1/k).
    plain,
    /// Fejér means of a degree-N polynomial satisfy h_k = L - M/(k+1) exactly once k >= N, so the
    /// limit is recovered by Richardson extrapolation L ~ h_k + k (h_k - h_{k-1}); stop when
    /// successive extrapolated limits agree to `tol`.
    extrapolated,
};

struct FejerPlan {
    int max_k = 4096;
    double tol = 1e-8;
    FejerMode mode = FejerMode::extrapolated;
};

struct ThetaResult {
    /// Cesàro limit estimate on C^n (x) H.
    CMatrix value;
    /// Last raw Fejér mean h_k.
    CMatrix fejer_mean;
    /// Exact finite sum sum_j g^j (x) T^j, present when the series carries no tail.
    std::optional<CMatrix> reference;
    int achieved_k = 0;
    bool converged = false;
    /// Last successive difference (Frobenius, an upper bound for the operator norm).
    double last_step = 0.0;
};

/// Functional calculus g(T) = sum_j g^j (x) T^j, summed by Fejér (Cesàro) means.
/// Throws DomainError when ||T|| > 1 + 1e-12; non-convergence is flagged, not thrown.
ThetaResult theta(const DiscAlgElem& g, const CMatrix& t, const FejerPlan& plan = {});

/// Closed form for S-points: u (x) 1 + (v (x) U)(1 - u (x) U)^{-1}(v (x) 1).
CMatrix theta_closed_smap(const GradedPoint& x, const CMatrix& u_op);

struct VnNormCheck {
    double norm = 0.0;
    double sup_norm = 0.0;
    double slack = 0.0;
    bool strict = false;
};

/// ||g(T)|| and whether it is < 1 - slack, slack = plan.tol + tail_bound.
/// Throws DomainError unless sup_norm(g) < 1 and ||T|| <= 1.
VnNormCheck vn_norm_check(const DiscAlgElem& g, const CMatrix& t, const FejerPlan& plan = {});

/// || g(s^{-1} g s)(U) - (s^{-1} (x) 1) g(U) (s (x) 1) ||
double theta_similarity_check(const DiscAlgElem& g, const CMatrix& s, const CMatrix& u_op,
                              const FejerPlan& plan = {});

/// Permutation taking (C^m (x) H) (+) (C^n (x) H) onto C^{m+n} (x) H. With the library's
/// Kronecker ordering (matrix index outermost) this is the identity; it is exposed so that
/// direct-sum identities state the identification explicitly.
Eigen::PermutationMatrix<Eigen::Dynamic> tensor_sum_permutation(Eigen::Index m, Eigen::Index n, Eigen::Index h);

}  // namespace ncsym
