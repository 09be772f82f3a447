#include "ncsym/mat.hpp"

#include <cmath>

#include "ncsym/rng.hpp"

namespace ncsym {

namespace {

// LU condition estimate screens the common case; the exact SVD test only runs when it is inconclusive.
void require_invertible(const CMatrix& a, const Eigen::PartialPivLU<CMatrix>& lu, const char* who) {
    if (lu.rcond() > 1e-8) return;
    const Eigen::VectorXd s = singular_values(a);
    const double smin = s(s.size() - 1);
    if (!(smin > kSingularityThreshold * s(0))) throw SingularMatrix(std::string(who) + ": matrix is singular", smin);
}

void require_square_finite(const CMatrix& a, const char* who) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw InvalidInput(std::string(who) + ": expected a non-empty square matrix");
    if (!all_finite(a)) throw InvalidInput(std::string(who) + ": non-finite entry");
}

}  // namespace

CMatrix inverse(const CMatrix& a) {
    require_square_finite(a, "inverse");
    Eigen::PartialPivLU<CMatrix> lu(a);
    require_invertible(a, lu, "inverse");
    return lu.inverse();
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
    require_square_finite(a, "solve");
    if (b.rows() != a.rows()) throw InvalidInput("solve: right-hand side has wrong row count");
    Eigen::PartialPivLU<CMatrix> lu(a);
    require_invertible(a, lu, "solve");
    return lu.solve(b);
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix random_gaussian(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols) {
    CounterRng rng(seed);
    CMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
    return g;
}

CMatrix random_unitary(std::uint64_t seed, Eigen::Index n) {
    if (n < 1) throw InvalidInput("random_unitary: n must be positive");
    const CMatrix g = random_gaussian(CounterRng(seed).split("unitary").next_u64(), n, n);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * identity(n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Scalar d = r(j, j);
        const double m = std::abs(d);
        q.col(j) *= (m > 0.0 ? d / m : Scalar(1.0));
    }
    return q;
}

CMatrix random_strict_contraction(std::uint64_t seed, Eigen::Index n, double r) {
    return random_contraction(seed, n, n, r);
}

CMatrix random_contraction(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols, double r) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidInput("random_contraction: r must lie in (0, 1)");
    if (rows < 1 || cols < 1) throw InvalidInput("random_contraction: dimensions must be positive");
    CounterRng rng = CounterRng(seed).split("contraction");
    const double rho = rng.uniform();
    CMatrix g = random_gaussian(rng.next_u64(), rows, cols);
    g *= (r * rho) / op_norm(g);
    // rounding in the SVD can overshoot by an ulp or two
    const double norm = op_norm(g);
    if (norm > r) g *= (r / norm) * (1.0 - 4e-16);
    return g;
}

double unitarity_defect(const CMatrix& a) {
    return op_norm((a.adjoint() * a - identity(a.cols())).eval());
}

}  // namespace ncsym
