#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncsym/funcalc.hpp"
#include "ncsym/linfrac.hpp"
#include "ncsym/lurking.hpp"
#include "ncsym/mat.hpp"
#include "ncsym/ncfun.hpp"
#include "ncsym/symmap.hpp"

namespace ncsym {

/// Finite-dimensional model (P, m) of a symmetric function on the biball:
/// 1 - phi(y)^* phi(x) = m(y)^* (1 - y_P^* x_P) m(x), x_P = x1 (x) P1 + x2 (x) P2.
struct NcModel {
    Eigen::Index model_dim = 0;
    CMatrix P1;
    CMatrix P2;
    /// x -> m(x) : C^n -> C^n (x) K, an (n * model_dim) x n matrix.
    GradedMap m;
    /// Swap-closed fit points.
    std::vector<GradedPoint> samples;

    CMatrix x_p(const GradedPoint& x) const;
    /// Projections self-adjoint, idempotent, summing to 1 (1e-12); throws InvalidInput.
    void validate() const;
};

struct SampleDesign {
    int base_per_level = 6;
    int holdout_per_level = 4;
    double radius = 0.9;
};

struct SymmetricInstance {
    GradedFnOracle phi;
    NcModel model;
    std::vector<GradedPoint> holdout;
    /// Unitary colligation on C (+) (H1 (+) H2) commuting with the swap of H1 and H2.
    Colligation V;
};

/// Seeded swap-equivariant unitary colligation V with H1 = H2 = C^k_half, the symmetric function
/// phi(x) = F^u_{1 (x) V}(x_P) and its exact model m(x) = (1 - (1 (x) D) x_P)^{-1} (1 (x) C).
SymmetricInstance gen_symmetric_colligation(std::uint64_t seed, Eigen::Index k_half, const std::vector<int>& levels,
                                            const SampleDesign& design = {});

/// Throws InvalidInput naming the first sample whose swap is missing.
void require_swap_closed(const std::vector<GradedPoint>& samples);

struct ModelResidual {
    double residual = 0.0;
    std::size_t pairs = 0;
    /// Pairs at different levels, not comparable.
    std::size_t skipped_pairs = 0;
};

ModelResidual model_residual(const NcModel& model, const GradedFnOracle& phi);

/// Doubles the model space: K' = K (+) K, m' = 0 (+) m, P1' = 1 (+) P1, P2' = 0 (+) P2.
/// The first copy is redundant: no value of m' reaches it.
NcModel pad_model(const NcModel& model);

/// m^i(x) = (1 (x) P^i) m(x), kept in C^n (x) K.
std::pair<GradedMap, GradedMap> split_model(const NcModel& model);

/// w(x) = (m^1(x) + m^2(x~)) / sqrt 2 and w~(x) = w(x~), x~ the swapped point.
std::pair<GradedMap, GradedMap> build_w(const NcModel& model);

/// x^j (x) U on C^n (x) K.
CMatrix x_tensor(const CMatrix& xj, const CMatrix& u_op);

/// (1 - X1)^{-1} + (1 - X2)^{-1} - 1 with X^j = x^j (x) U.
CMatrix build_A(const GradedPoint& x, const CMatrix& u_op);

/// ||(1 + A)^{-1}(1 - A) + (1 (x) U) Theta_U(S(x))||.
double cayley_check(const GradedPoint& x, const CMatrix& u_op);

/// Residual of 4 (Z1^{-1} + Z2^{-1})^{-1} = Z1 + Z2 - (Z1 - Z2)(Z1 + Z2)^{-1}(Z1 - Z2).
/// A singular pencil raises SingularMatrix naming it.
double matrix_identity_check(const CMatrix& z1, const CMatrix& z2);

struct StageRecord {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct Realization {
    CMatrix U;
    /// T = [a B; C D] on C (+) K.
    Colligation T;
    /// p = T diag(1, -U).
    Colligation p;
    std::vector<StageRecord> diagnostics;
};

struct USolution {
    IsometrySolution iso;
    double intertwining = 0.0;
};

/// U with (1 (x) U) g = f, g(x) = (x1 (x) 1) w - (x2 (x) 1) w~, f = w - w~, on the model samples.
USolution solve_U(const NcModel& model, const LurkingOptions& options = {});

/// nu(x) = (1 - x1 (x) U) w(x).
GradedMap build_nu(const NcModel& model, const CMatrix& u_op);

struct TSolution {
    IsometrySolution iso;
    Colligation T;
    /// max || (1 (x) T) [1; (1 - A) nu / sqrt 2] - [phi; (1 + A) nu / sqrt 2] || on the samples.
    double lift_residual = 0.0;
};

TSolution solve_T(const NcModel& model, const CMatrix& u_op, const GradedFnOracle& phi,
                  const LurkingOptions& options = {});

Realization assemble_realization(const Colligation& t, const CMatrix& u_op);

/// F^u_{1 (x) p}(g(U)) with g(U) summed by Fejér means.
CMatrix phi_eval(const Realization& r, const DiscAlgElem& g, const FejerPlan& plan = {});

/// F^u_{1 (x) p}(Theta_U(S(x))) with the closed form for Theta_U at S-points.
CMatrix phi_eval_smap(const Realization& r, const GradedPoint& x);

/// max over points of ||phi(x) - F^u_{1 (x) p}(Theta_U(S(x)))||.
double verify_factorization(const Realization& r, const GradedFnOracle& phi, const std::vector<GradedPoint>& points);

/// Redheffer form: phi(x) = F^u_{C(x)}(1 (x) U), C(x) = (1 (x) p) * (Q(x) (x) 1).
CMatrix redheffer_route(const Realization& r, const GradedPoint& x);

/// (det(g(z0) - g(0)) - z0^n det(g^1) / det(1 - g(0) z0)) 1_n. Vanishes on S-series.
CMatrix nonuniqueness_phi0(const DiscAlgElem& g, Scalar z0);

/// Stage names in pipeline order.
const std::vector<std::string>& pipeline_stages();
/// Default tolerance for a stage; throws InvalidInput for unknown names.
double default_stage_tolerance(const std::string& stage);

struct PipelineConfig {
    std::uint64_t seed = 1;
    Eigen::Index k_half = 2;
    std::vector<int> levels{1, 2, 3};
    bool pad = true;
    SampleDesign design;
    /// Overrides of default_stage_tolerance.
    std::map<std::string, double> tolerances;
    LurkingOptions lurking;
};

struct PipelineReport {
    std::vector<StageRecord> stages;
    Realization realization;
    double fit = 0.0;
    double holdout = 0.0;
    bool unitary_U = false;
    Eigen::Index u_rank = 0;
    Eigen::Index t_rank = 0;

    bool all_pass() const;
    /// Name of the first failing stage, empty when all pass.
    std::string first_failure() const;
};

/// Generates an instance and runs the realization pipeline on it. Numerical breakdown inside a
/// stage is rethrown as StageFailure carrying the stage name; residuals over tolerance are
/// reported, not thrown.
PipelineReport run_pipeline(const PipelineConfig& config);

/// The pipeline on a caller-supplied model and function.
PipelineReport run_pipeline(const NcModel& model, const GradedFnOracle& phi, const std::vector<GradedPoint>& holdout,
                            const PipelineConfig& config);

}  // namespace ncsym
