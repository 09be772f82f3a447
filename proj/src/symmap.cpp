#include "ncsym/symmap.hpp"

#include <cmath>
#include <numbers>

namespace ncsym {

DiscAlgElem::DiscAlgElem(std::vector<CMatrix> coefficients, double tail)
    : coeffs(std::move(coefficients)), tail_bound(tail) {
    if (coeffs.empty()) throw InvalidInput("DiscAlgElem: at least one coefficient required");
    level = coeffs.front().rows();
    if (level < 1) throw InvalidInput("DiscAlgElem: level must be at least 1");
    for (const auto& c : coeffs)
        if (c.rows() != level || c.cols() != level) throw InvalidInput("DiscAlgElem: coefficients must be n x n");
    if (!std::isfinite(tail_bound) || tail_bound < 0.0) throw InvalidInput("DiscAlgElem: invalid tail bound");
}

int DiscAlgElem::degree() const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
        if (!coeffs[j].isZero(0.0)) return j;
    return -1;
}

CMatrix DiscAlgElem::value_at(Scalar z) const {
    // Horner
    CMatrix acc = coeffs.back();
    for (int j = static_cast<int>(coeffs.size()) - 2; j >= 0; --j) acc = coeffs[j] + z * acc;
    return acc;
}

DiscAlgElem DiscAlgElem::conjugated(const CMatrix& s) const {
    const CMatrix sinv = inverse(s);
    std::vector<CMatrix> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(sinv * c * s);
    // the sup norm is not similarity invariant; scale the tail by cond(s)
    const Eigen::VectorXd sv = singular_values(s);
    return DiscAlgElem(std::move(out), tail_bound * sv(0) / sv(sv.size() - 1));
}

DiscAlgElem DiscAlgElem::scaled(Scalar c) const {
    std::vector<CMatrix> out;
    for (const auto& g : coeffs) out.push_back(c * g);
    return DiscAlgElem(std::move(out), tail_bound * std::abs(c));
}

DiscAlgElem direct_sum(const DiscAlgElem& g, const DiscAlgElem& h) {
    const std::size_t len = std::max(g.coeffs.size(), h.coeffs.size());
    std::vector<CMatrix> out;
    out.reserve(len);
    for (std::size_t j = 0; j < len; ++j) {
        const CMatrix a = j < g.coeffs.size() ? g.coeffs[j] : CMatrix::Zero(g.level, g.level);
        const CMatrix b = j < h.coeffs.size() ? h.coeffs[j] : CMatrix::Zero(h.level, h.level);
        out.push_back(direct_sum(a, b));
    }
    return DiscAlgElem(std::move(out), std::max(g.tail_bound, h.tail_bound));
}

DiscAlgElem scalar_series(const std::vector<Scalar>& coefficients) {
    std::vector<CMatrix> out;
    for (Scalar c : coefficients) out.push_back(CMatrix::Constant(1, 1, c));
    return DiscAlgElem(std::move(out));
}

std::pair<CMatrix, CMatrix> uv(const GradedPoint& x) {
    if (x.arity() != 2) throw InvalidInput("uv: requires a pair");
    return {0.5 * (x[0] + x[1]), 0.5 * (x[0] - x[1])};
}

namespace {

double tail_bound_for(double norm_u, double norm_v, int truncation) {
    return norm_v * norm_v * std::pow(norm_u, truncation - 1) / (1.0 - norm_u);
}

void require_biball(const GradedPoint& x, const char* who) {
    if (!in_biball(x)) throw DomainError(std::string(who) + ": point lies outside the biball");
}

}  // namespace

int default_truncation(const GradedPoint& x) {
    require_biball(x, "default_truncation");
    const auto [u, v] = uv(x);
    const double nu = op_norm(u);
    const double nv = op_norm(v);
    int n = 2;
    while (n < 512 && tail_bound_for(nu, nv, n) > 1e-12) ++n;
    return n;
}

SPoint s_map(const GradedPoint& x, int truncation) {
    require_biball(x, "s_map");
    if (truncation < 2) throw InvalidInput("s_map: truncation length must be at least 2");
    auto [u, v] = uv(x);
    std::vector<CMatrix> coeffs;
    coeffs.reserve(static_cast<std::size_t>(truncation));
    coeffs.push_back(u);
    CMatrix left = v;  // v u^{j-1}
    for (int j = 1; j < truncation; ++j) {
        coeffs.push_back(left * v);
        left = left * u;
    }
    const double tail = tail_bound_for(op_norm(u), op_norm(v), truncation);
    return SPoint{std::move(u), std::move(v), DiscAlgElem(std::move(coeffs), tail)};
}

SPoint s_map(const GradedPoint& x) { return s_map(x, default_truncation(x)); }

CMatrix s_gen(const GradedPoint& x, Scalar z) {
    if (std::abs(z) > 1.0) throw InvalidInput("s_gen: |z| must not exceed 1");
    const auto [u, v] = uv(x);
    const Eigen::Index n = x.level();
    return u + z * v * solve(identity(n) - z * u, v);
}

CMatrix q_mat(const GradedPoint& x) {
    const auto [u, v] = uv(x);
    const Eigen::Index n = x.level();
    CMatrix q(2 * n, 2 * n);
    q << u, v, v, u;
    return q;
}

CMatrix q_conjugator(Eigen::Index n) {
    const CMatrix i = identity(n);
    CMatrix w(2 * n, 2 * n);
    w << i, i, i, -i;
    return w / std::sqrt(2.0);
}

double sup_norm(const DiscAlgElem& g, int grid_size) {
    if (grid_size < 64) throw InvalidInput("sup_norm: grid size must be at least 64");
    double m = 0.0;
    for (int k = 0; k < grid_size; ++k) {
        const double t = 2.0 * std::numbers::pi * k / grid_size;
        m = std::max(m, op_norm(g.value_at(std::polar(1.0, t))));
    }
    return m + g.tail_bound;
}

OmegaMembership omega_membership(const DiscAlgElem& g, int grid_size) {
    OmegaMembership out;
    out.upper_estimate = sup_norm(g, grid_size);
    out.grid_estimate = out.upper_estimate - g.tail_bound;
    out.gap = g.tail_bound;
    if (out.upper_estimate < 1.0 - 1e-8)
        out.status = Membership::inside;
    else if (out.grid_estimate - g.tail_bound > 1.0 + 1e-8)
        out.status = Membership::outside;
    else
        out.status = Membership::undecided;
    return out;
}

}  // namespace ncsym
