#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ncsym/mat.hpp"

namespace ncsym {

/// A point of M_n^d: a d-tuple of n x n matrices.
class GradedPoint {
public:
    GradedPoint() = default;
    explicit GradedPoint(std::vector<CMatrix> components);
    GradedPoint(CMatrix x1, CMatrix x2);

    Eigen::Index level() const noexcept { return level_; }
    std::size_t arity() const noexcept { return components_.size(); }
    const CMatrix& operator[](std::size_t j) const { return components_.at(j); }
    const std::vector<CMatrix>& components() const noexcept { return components_; }

    /// max_j ||x^j||
    double norm() const;
    /// (x^2, x^1); requires d == 2.
    GradedPoint swapped() const;
    /// s^{-1} x s componentwise.
    GradedPoint conjugated(const CMatrix& s) const;

    bool operator==(const GradedPoint& other) const;

private:
    std::vector<CMatrix> components_;
    Eigen::Index level_ = 0;
};

GradedPoint direct_sum(const GradedPoint& a, const GradedPoint& b);

/// max(||x^1||, ||x^2||) < 1
bool in_biball(const GradedPoint& x);

/// Seeded pair of contractions of norm <= r at level n.
GradedPoint random_biball_point(std::uint64_t seed, Eigen::Index n, double r);

using GradedMap = std::function<CMatrix(const GradedPoint&)>;

/// A graded function under test.
///
/// At level n the output must be (n * row_factor) x (n * col_factor): operator-valued
/// functions into L(C^n (x) H, C^n (x) K) use row_factor = dim K, col_factor = dim H.
struct GradedFnOracle {
    GradedMap fn;
    std::function<bool(const GradedPoint&)> domain = [](const GradedPoint&) { return true; };
    Eigen::Index row_factor = 1;
    Eigen::Index col_factor = 1;

    /// Evaluates and enforces the output shape (ContractViolation otherwise).
    CMatrix operator()(const GradedPoint& x) const;
};

GradedFnOracle biball_oracle(GradedMap fn, Eigen::Index row_factor = 1, Eigen::Index col_factor = 1);

struct CheckResult {
    std::string name;
    std::string sample;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct PropertyReport {
    std::vector<CheckResult> checks;
    double max_residual = 0.0;

    bool all_pass() const;
    void add(CheckResult c);
    void merge(const PropertyReport& other);
};

PropertyReport check_direct_sums(const GradedFnOracle& f, const std::vector<GradedPoint>& samples, double tol = 1e-9);

/// Similarities s = 1 + eps * G drawn per sample from `seed` (eps = 0.25, halved on rejection),
/// accepted when cond(s) <= 4 and s^{-1} M s stays in the domain. Throws DomainError after 32 rejections.
PropertyReport check_similarity(const GradedFnOracle& f, const std::vector<GradedPoint>& samples, std::uint64_t seed,
                                double tol = 1e-9);

/// Same check with caller-supplied similarities, one per sample.
PropertyReport check_similarity(const GradedFnOracle& f, const std::vector<GradedPoint>& samples,
                                const std::vector<CMatrix>& similarities, double tol = 1e-9);

PropertyReport check_symmetry(const GradedFnOracle& f, const std::vector<GradedPoint>& samples, double tol = 1e-9);

/// Seeded similarity used by check_similarity; exposed for tests and other modules.
CMatrix random_similarity(std::uint64_t seed, Eigen::Index n, const std::function<bool(const CMatrix&)>& admissible);

}  // namespace ncsym
