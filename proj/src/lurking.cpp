#include "ncsym/lurking.hpp"

#include <sstream>

namespace ncsym {

CMatrix VectorFamily::stacked() const {
    CMatrix m(ambient_dim, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vectors[j];
    return m;
}

void VectorFamily::push_back(CVector v, VectorLabel label) {
    if (v.size() != ambient_dim) throw ContractViolation("VectorFamily: vector length differs from ambient dimension");
    vectors.push_back(std::move(v));
    labels.push_back(label);
}

VectorFamily collect_vectors(const GradedMap& f, const std::vector<GradedPoint>& samples, Eigen::Index k_dim) {
    VectorFamily fam;
    fam.ambient_dim = k_dim;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const Eigen::Index n = samples[s].level();
        const CMatrix fx = f(samples[s]);
        if (fx.rows() != n * k_dim || fx.cols() != n) {
            std::ostringstream os;
            os << "collect_vectors: f returned " << fx.rows() << "x" << fx.cols() << " at level " << n
               << ", expected " << n * k_dim << "x" << n;
            throw ContractViolation(os.str());
        }
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index xi = 0; xi < n; ++xi) fam.push_back(fx.block(k * k_dim, xi, k_dim, 1), {k, xi, s});
    }
    return fam;
}

namespace {

Eigen::Index numerical_rank(const Eigen::VectorXd& s, double rank_tol) {
    if (s.size() == 0 || s(0) == 0.0) return 0;
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > rank_tol * s(0)) ++r;
    return r;
}

// Operator norm of a Hermitian matrix via its spectrum.
double hermitian_norm(const CMatrix& h) {
    if (h.size() == 0) return 0.0;
    if (!all_finite(h)) throw InvalidInput("solve_lurking: non-finite Gram entry");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

CMatrix range_projector(const CMatrix& a, double rank_tol) {
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU);
    const Eigen::Index r = numerical_rank(svd.singularValues(), rank_tol);
    const CMatrix ur = svd.matrixU().leftCols(r);
    return ur * ur.adjoint();
}

IsometrySolution solve_lurking(const VectorFamily& p, const VectorFamily& q, bool pad_to_unitary,
                               const LurkingOptions& options) {
    if (p.size() != q.size()) throw InvalidInput("solve_lurking: families must be index-aligned");
    const Eigen::Index k1 = p.ambient_dim;
    const Eigen::Index k2 = q.ambient_dim;
    const CMatrix pm = p.stacked();
    const CMatrix qm = q.stacked();

    IsometrySolution sol;
    if (p.size() > 0) {
        const CMatrix gp = pm.adjoint() * pm;
        const CMatrix gq = qm.adjoint() * qm;
        const double scale = std::max(1.0, hermitian_norm(gp));
        sol.gram_residual = hermitian_norm(gp - gq);
        if (sol.gram_residual > options.gram_tol * scale)
            throw HypothesisViolation("solve_lurking: Gram matrices of the two families differ", sol.gram_residual);
    }

    // an empty family has nothing to decompose; Eigen's SVD does not accept zero columns
    Eigen::JacobiSVD<CMatrix> svd;
    if (p.size() > 0) svd.compute(pm, Eigen::ComputeFullU | Eigen::ComputeThinV);
    const Eigen::Index r = p.size() > 0 ? numerical_rank(svd.singularValues(), options.rank_tol) : 0;
    sol.rank = r;

    CMatrix range_basis(k2, r);  // J applied to the leading left singular vectors
    if (r > 0) {
        const Eigen::VectorXd s = svd.singularValues().head(r);
        CMatrix l = qm * svd.matrixV().leftCols(r) * s.cwiseInverse().asDiagonal();
        Eigen::JacobiSVD<CMatrix> polar(l, Eigen::ComputeThinU | Eigen::ComputeThinV);
        range_basis = polar.matrixU() * polar.matrixV().adjoint();
    }
    const CMatrix u_full = p.size() > 0 ? CMatrix(svd.matrixU()) : identity(k1);
    sol.J = range_basis * u_full.leftCols(r).adjoint();

    if (pad_to_unitary) {
        if (k1 - r != k2 - r)
            throw PaddingError("solve_lurking: redundant subspaces have different dimensions (" +
                               std::to_string(k1 - r) + " vs " + std::to_string(k2 - r) + ")");
        if (k1 > r) {
            // orthonormal complement of the range in K2, in SVD order
            CMatrix complement;
            if (r > 0) {
                Eigen::JacobiSVD<CMatrix> rs(range_basis, Eigen::ComputeFullU);
                complement = rs.matrixU().rightCols(k2 - r);
            } else {
                complement = identity(k2);
            }
            sol.J += complement * u_full.rightCols(k1 - r).adjoint();
        }
        sol.unitary = true;
    } else {
        sol.unitary = (r == k1 && r == k2);
    }
    return sol;
}

}  // namespace ncsym
