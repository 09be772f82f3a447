#include "ncsym/funcalc.hpp"

namespace ncsym {

namespace {

void require_contraction(const CMatrix& t, const char* who) {
    if (t.rows() != t.cols() || t.rows() == 0) throw InvalidInput(std::string(who) + ": T must be square");
    if (op_norm(t) > 1.0 + 1e-12) throw DomainError(std::string(who) + ": T is not a contraction");
}

}  // namespace

ThetaResult theta(const DiscAlgElem& g, const CMatrix& t, const FejerPlan& plan) {
    require_contraction(t, "theta");
    if (plan.max_k < 1 || !(plan.tol > 0.0)) throw InvalidInput("theta: invalid Fejer plan");
    const Eigen::Index n = g.level;
    const Eigen::Index h = t.rows();
    const int degree = g.degree();

    CMatrix power = identity(h);                        // T^k
    CMatrix partial = kron(g.coeffs[0], power);         // S_k
    CMatrix mean = partial;                             // h_k
    CMatrix limit = partial;                            // extrapolated limit at step k
    ThetaResult out;
    out.converged = false;

    for (int k = 1; k <= plan.max_k; ++k) {
        if (k <= degree) {
            power = power * t;
            if (!g.coeffs[static_cast<std::size_t>(k)].isZero(0.0)) partial += kron(g.coeffs[static_cast<std::size_t>(k)], power);
        }
        const CMatrix prev_mean = mean;
        mean = (static_cast<double>(k) * mean + partial) / static_cast<double>(k + 1);
        double step = 0.0;
        if (plan.mode == FejerMode::plain) {
            step = (mean - prev_mean).norm();
            limit = mean;
        } else {
            const CMatrix next_limit = mean + static_cast<double>(k) * (mean - prev_mean);
            step = (next_limit - limit).norm();
            limit = next_limit;
        }
        out.achieved_k = k;
        out.last_step = step;
        // no decision before every stored coefficient has entered the means
        if (k > degree && step <= plan.tol) {
            out.converged = true;
            break;
        }
    }
    out.value = limit;
    out.fejer_mean = mean;
    if (g.tail_bound == 0.0) {
        CMatrix exact = CMatrix::Zero(n * h, n * h);
        CMatrix pw = identity(h);
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
            if (j > 0) pw = pw * t;
            exact += kron(g.coeffs[j], pw);
        }
        out.reference = std::move(exact);
    }
    return out;
}

CMatrix theta_closed_smap(const GradedPoint& x, const CMatrix& u_op) {
    if (!in_biball(x)) throw DomainError("theta_closed_smap: point lies outside the biball");
    require_contraction(u_op, "theta_closed_smap");
    const auto [u, v] = uv(x);
    const Eigen::Index h = u_op.rows();
    const CMatrix ih = identity(h);
    const CMatrix uu = kron(u, u_op);
    const CMatrix pencil = identity(uu.rows()) - uu;
    return kron(u, ih) + kron(v, u_op) * solve(pencil, kron(v, ih));
}

VnNormCheck vn_norm_check(const DiscAlgElem& g, const CMatrix& t, const FejerPlan& plan) {
    VnNormCheck out;
    out.sup_norm = sup_norm(g);
    if (!(out.sup_norm < 1.0)) throw DomainError("vn_norm_check: g is not in the open unit ball (sup norm >= 1)");
    const ThetaResult r = theta(g, t, plan);
    out.norm = op_norm(r.value);
    out.slack = plan.tol + g.tail_bound;
    out.strict = out.norm < 1.0 - out.slack;
    return out;
}

double theta_similarity_check(const DiscAlgElem& g, const CMatrix& s, const CMatrix& u_op, const FejerPlan& plan) {
    const CMatrix sinv = inverse(s);
    const Eigen::Index h = u_op.rows();
    const CMatrix lhs = theta(g.conjugated(s), u_op, plan).value;
    const CMatrix rhs = kron(sinv, identity(h)) * theta(g, u_op, plan).value * kron(s, identity(h));
    return op_norm((lhs - rhs).eval());
}

Eigen::PermutationMatrix<Eigen::Dynamic> tensor_sum_permutation(Eigen::Index m, Eigen::Index n, Eigen::Index h) {
    Eigen::PermutationMatrix<Eigen::Dynamic> perm((m + n) * h);
    // index i*h + k of the left summand, m*h + i*h + k of the right, both equal (row block i) * h + k
    for (Eigen::Index i = 0; i < m + n; ++i)
        for (Eigen::Index k = 0; k < h; ++k) perm.indices()(i * h + k) = static_cast<int>(i * h + k);
    return perm;
}

}  // namespace ncsym
