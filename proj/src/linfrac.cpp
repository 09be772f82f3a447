#include "ncsym/linfrac.hpp"

#include <sstream>

namespace ncsym {

Colligation::Colligation(CMatrix p11, CMatrix p12, CMatrix p21, CMatrix p22)
    : dims_{p11.rows(), p11.cols(), p12.cols(), p21.rows()},
      p11_(std::move(p11)),
      p12_(std::move(p12)),
      p21_(std::move(p21)),
      p22_(std::move(p22)) {
    validate();
}

Colligation::Colligation(BlockDims dims, CMatrix p11, CMatrix p12, CMatrix p21, CMatrix p22)
    : dims_(dims), p11_(std::move(p11)), p12_(std::move(p12)), p21_(std::move(p21)), p22_(std::move(p22)) {
    validate();
}

void Colligation::validate() const {
    const auto& d = dims_;
    auto shape_ok = [](const CMatrix& m, Eigen::Index r, Eigen::Index c) { return m.rows() == r && m.cols() == c; };
    if (!shape_ok(p11_, d.h1, d.k1) || !shape_ok(p12_, d.h1, d.h2) || !shape_ok(p21_, d.k2, d.k1) ||
        !shape_ok(p22_, d.k2, d.h2)) {
        std::ostringstream os;
        os << "Colligation: blocks not conformal with dims (" << d.h1 << "," << d.k1 << "," << d.h2 << "," << d.k2
           << ")";
        throw InvalidInput(os.str());
    }
    if (!all_finite(p11_) || !all_finite(p12_) || !all_finite(p21_) || !all_finite(p22_))
        throw InvalidInput("Colligation: non-finite entry");
}

Colligation Colligation::from_assembled(const CMatrix& p, BlockDims d) {
    if (p.rows() != d.h1 + d.k2 || p.cols() != d.k1 + d.h2)
        throw InvalidInput("Colligation::from_assembled: size does not match dims");
    return Colligation(d, p.topLeftCorner(d.h1, d.k1), p.topRightCorner(d.h1, d.h2),
                       p.bottomLeftCorner(d.k2, d.k1), p.bottomRightCorner(d.k2, d.h2));
}

CMatrix Colligation::assembled() const {
    CMatrix p(dims_.h1 + dims_.k2, dims_.k1 + dims_.h2);
    p.topLeftCorner(dims_.h1, dims_.k1) = p11_;
    p.topRightCorner(dims_.h1, dims_.h2) = p12_;
    p.bottomLeftCorner(dims_.k2, dims_.k1) = p21_;
    p.bottomRightCorner(dims_.k2, dims_.h2) = p22_;
    return p;
}

bool Colligation::is_contraction() const { return op_norm(assembled()) <= 1.0 + 1e-12; }

Colligation Colligation::block_transposed() const { return Colligation(p22_, p21_, p12_, p11_); }

Colligation Colligation::tensor_identity(Eigen::Index n) const {
    return Colligation(kron_identity(n, p11_), kron_identity(n, p12_), kron_identity(n, p21_),
                       kron_identity(n, p22_));
}

CMatrix f_lower(const Colligation& p, const CMatrix& x) {
    const auto& d = p.dims();
    if (x.rows() != d.k1 || x.cols() != d.h1) throw InvalidInput("f_lower: X must map H1 to K1");
    // X (1 - p11 X)^{-1} p12
    const CMatrix inner = solve(identity(d.h1) - p.p11() * x, p.p12());
    return p.p22() + p.p21() * x * inner;
}

CMatrix f_upper(const Colligation& p, const CMatrix& x) {
    const auto& d = p.dims();
    if (x.rows() != d.h2 || x.cols() != d.k2) throw InvalidInput("f_upper: X must map K2 to H2");
    const CMatrix inner = solve(identity(d.k2) - p.p22() * x, p.p21());
    return p.p11() + p.p12() * x * inner;
}

CMatrix graded_f_upper(const Colligation& p, Eigen::Index n, const CMatrix& x) {
    if (n < 1) throw InvalidInput("graded_f_upper: level must be positive");
    return f_upper(p.tensor_identity(n), x);
}

CMatrix graded_f_lower(const Colligation& p, Eigen::Index n, const CMatrix& x) {
    if (n < 1) throw InvalidInput("graded_f_lower: level must be positive");
    return f_lower(p.tensor_identity(n), x);
}

double realization_residual(const Colligation& p, const CMatrix& x) {
    const auto& d = p.dims();
    const CMatrix f = f_lower(p, x);
    const CMatrix r = solve(identity(d.h1) - p.p11() * x, p.p12());  // (1 - p11 X)^{-1} p12
    const CMatrix lhs = identity(d.h2) - f.adjoint() * f;
    const CMatrix first = r.adjoint() * (identity(d.h1) - x.adjoint() * x) * r;
    CMatrix c(d.k1 + d.h2, d.h2);
    c << x * r, identity(d.h2);
    const CMatrix pa = p.assembled();
    const CMatrix second = c.adjoint() * (identity(pa.cols()) - pa.adjoint() * pa) * c;
    return op_norm((lhs - first - second).eval());
}

Colligation redheffer(const Colligation& b, const Colligation& a) {
    const auto& db = b.dims();
    const auto& da = a.dims();
    if (db.h2 != da.h1 || db.k2 != da.k1)
        throw InvalidInput("redheffer: the range of A's upper map must match B's argument space");
    // A11 : K1a -> H1a, B22 : H2b -> K2b, with H1a = H2b and K1a = K2b
    const CMatrix pencil_a = identity(da.h1) - a.p11() * b.p22();  // 1 - A11 B22 on H1a
    const CMatrix pencil_b = identity(db.k2) - b.p22() * a.p11();  // 1 - B22 A11 on K2b
    const CMatrix c11 = f_upper(b, a.p11());
    const CMatrix c12 = b.p12() * solve(pencil_a, a.p12());
    const CMatrix c21 = a.p21() * solve(pencil_b, b.p21());
    const CMatrix c22 = f_lower(a, b.p22());
    return Colligation(c11, c12, c21, c22);
}

}  // namespace ncsym
