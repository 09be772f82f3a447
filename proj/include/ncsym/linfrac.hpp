#pragma once

#include "ncsym/mat.hpp"

namespace ncsym {

/// Block labels: p maps K1 (+) H2 to H1 (+) K2, so p11 is h1 x k1, p12 is h1 x h2,
/// p21 is k2 x k1 and p22 is k2 x h2.
struct BlockDims {
    Eigen::Index h1 = 0;
    Eigen::Index k1 = 0;
    Eigen::Index h2 = 0;
    Eigen::Index k2 = 0;

    bool operator==(const BlockDims&) const = default;
};

/// 2x2 block operator matrix parameterising a linear fractional map.
class Colligation {
public:
    Colligation() = default;
    /// Infers the block dimensions and checks conformality.
    Colligation(CMatrix p11, CMatrix p12, CMatrix p21, CMatrix p22);
    /// Checks the blocks against explicitly declared dimensions.
    Colligation(BlockDims dims, CMatrix p11, CMatrix p12, CMatrix p21, CMatrix p22);

    /// Splits an assembled (h1 + k2) x (k1 + h2) matrix.
    static Colligation from_assembled(const CMatrix& p, BlockDims dims);

    const BlockDims& dims() const noexcept { return dims_; }
    const CMatrix& p11() const noexcept { return p11_; }
    const CMatrix& p12() const noexcept { return p12_; }
    const CMatrix& p21() const noexcept { return p21_; }
    const CMatrix& p22() const noexcept { return p22_; }

    CMatrix assembled() const;
    /// ||p|| <= 1 + 1e-12
    bool is_contraction() const;
    /// [p22 p21; p12 p11]: exchanges the roles of the upper and lower maps.
    Colligation block_transposed() const;
    /// 1_n (x) p blockwise.
    Colligation tensor_identity(Eigen::Index n) const;

private:
    void validate() const;

    BlockDims dims_;
    CMatrix p11_, p12_, p21_, p22_;
};

/// p22 + p21 X (1 - p11 X)^{-1} p12, X : H1 -> K1.
CMatrix f_lower(const Colligation& p, const CMatrix& x);

/// p11 + p12 X (1 - p22 X)^{-1} p21, X : K2 -> H2.
CMatrix f_upper(const Colligation& p, const CMatrix& x);

/// Graded upper map: 1_n (x) p11 + (1_n (x) p12) X (1 - (1_n (x) p22) X)^{-1} (1_n (x) p21),
/// X : C^n (x) K2 -> C^n (x) H2.
CMatrix graded_f_upper(const Colligation& p, Eigen::Index n, const CMatrix& x);

/// Graded lower map, X : C^n (x) H1 -> C^n (x) K1.
CMatrix graded_f_lower(const Colligation& p, Eigen::Index n, const CMatrix& x);

/// Norm of the defect in the identity
///   1 - F*F = p12* (1 - X*p11*)^{-1} (1 - X*X) (1 - p11 X)^{-1} p12 + c* (1 - p*p) c,
///   c = [X (1 - p11 X)^{-1} p12; 1],
/// for the lower map F = f_lower(p, X).
double realization_residual(const Colligation& p, const CMatrix& x);

/// Redheffer star product B * A, characterised by f_upper(B * A, X) = f_upper(B, f_upper(A, X)).
Colligation redheffer(const Colligation& b, const Colligation& a);

}  // namespace ncsym
