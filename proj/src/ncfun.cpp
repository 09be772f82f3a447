#include "ncsym/ncfun.hpp"

#include <algorithm>
#include <sstream>

#include "ncsym/rng.hpp"

namespace ncsym {

GradedPoint::GradedPoint(std::vector<CMatrix> components) : components_(std::move(components)) {
    if (components_.empty()) throw InvalidInput("GradedPoint: at least one component required");
    level_ = components_.front().rows();
    if (level_ < 1) throw InvalidInput("GradedPoint: level must be at least 1");
    for (const auto& c : components_) {
        if (c.rows() != level_ || c.cols() != level_)
            throw InvalidInput("GradedPoint: components must be square of a common size");
        if (!all_finite(c)) throw InvalidInput("GradedPoint: non-finite entry");
    }
}

GradedPoint::GradedPoint(CMatrix x1, CMatrix x2) : GradedPoint(std::vector<CMatrix>{std::move(x1), std::move(x2)}) {}

double GradedPoint::norm() const {
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, op_norm(c));
    return m;
}

GradedPoint GradedPoint::swapped() const {
    if (arity() != 2) throw InvalidInput("swapped: requires a pair");
    return GradedPoint(components_[1], components_[0]);
}

GradedPoint GradedPoint::conjugated(const CMatrix& s) const {
    const CMatrix sinv = inverse(s);
    std::vector<CMatrix> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(sinv * c * s);
    return GradedPoint(std::move(out));
}

bool GradedPoint::operator==(const GradedPoint& other) const {
    if (arity() != other.arity() || level_ != other.level_) return false;
    for (std::size_t j = 0; j < arity(); ++j)
        if (components_[j] != other.components_[j]) return false;
    return true;
}

GradedPoint direct_sum(const GradedPoint& a, const GradedPoint& b) {
    if (a.arity() != b.arity()) throw InvalidInput("direct_sum: arity mismatch");
    std::vector<CMatrix> out;
    for (std::size_t j = 0; j < a.arity(); ++j) out.push_back(direct_sum(a[j], b[j]));
    return GradedPoint(std::move(out));
}

bool in_biball(const GradedPoint& x) {
    if (x.arity() != 2) throw InvalidInput("in_biball: requires d == 2");
    return x.norm() < 1.0;
}

GradedPoint random_biball_point(std::uint64_t seed, Eigen::Index n, double r) {
    CounterRng rng(seed);
    const std::uint64_t s1 = rng.next_u64();
    const std::uint64_t s2 = rng.next_u64();
    return GradedPoint(random_strict_contraction(s1, n, r), random_strict_contraction(s2, n, r));
}

CMatrix GradedFnOracle::operator()(const GradedPoint& x) const {
    CMatrix y = fn(x);
    const Eigen::Index n = x.level();
    if (y.rows() != n * row_factor || y.cols() != n * col_factor) {
        std::ostringstream os;
        os << "graded oracle returned " << y.rows() << "x" << y.cols() << " at level " << n << ", expected "
           << n * row_factor << "x" << n * col_factor;
        throw ContractViolation(os.str());
    }
    return y;
}

GradedFnOracle biball_oracle(GradedMap fn, Eigen::Index row_factor, Eigen::Index col_factor) {
    GradedFnOracle f;
    f.fn = std::move(fn);
    f.domain = [](const GradedPoint& x) { return in_biball(x); };
    f.row_factor = row_factor;
    f.col_factor = col_factor;
    return f;
}

bool PropertyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void PropertyReport::add(CheckResult c) {
    max_residual = std::max(max_residual, c.residual);
    checks.push_back(std::move(c));
}

void PropertyReport::merge(const PropertyReport& other) {
    for (const auto& c : other.checks) add(c);
}

PropertyReport check_direct_sums(const GradedFnOracle& f, const std::vector<GradedPoint>& samples, double tol) {
    PropertyReport report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i; j < samples.size(); ++j) {
            const GradedPoint sum = direct_sum(samples[i], samples[j]);
            if (!f.domain(sum)) continue;
            const CMatrix lhs = f(sum);
            const CMatrix rhs = direct_sum(f(samples[i]), f(samples[j]));
            const double r = op_norm((lhs - rhs).eval());
            report.add({"direct_sum", "samples " + std::to_string(i) + "+" + std::to_string(j), r, tol, r <= tol});
        }
    }
    return report;
}

CMatrix random_similarity(std::uint64_t seed, Eigen::Index n,
                          const std::function<bool(const CMatrix&)>& admissible) {
    CounterRng rng(seed);
    const CMatrix g = random_gaussian(rng.next_u64(), n, n);
    double eps = 0.25;
    for (int attempt = 0; attempt < 32; ++attempt, eps *= 0.5) {
        const CMatrix s = identity(n) + eps * g;
        const Eigen::VectorXd sv = singular_values(s);
        if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 4.0) continue;
        if (admissible(s)) return s;
    }
    throw DomainError("random_similarity: no admissible similarity after 32 retries");
}

PropertyReport check_similarity(const GradedFnOracle& f, const std::vector<GradedPoint>& samples,
                                const std::vector<CMatrix>& similarities, double tol) {
    if (similarities.size() != samples.size())
        throw InvalidInput("check_similarity: one similarity per sample required");
    PropertyReport report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const CMatrix& s = similarities[i];
        const CMatrix sinv = inverse(s);
        const CMatrix lhs = f(samples[i].conjugated(s));
        const CMatrix rhs = kron(sinv, identity(f.row_factor)) * f(samples[i]) * kron(s, identity(f.col_factor));
        const double r = op_norm((lhs - rhs).eval());
        report.add({"similarity", "sample " + std::to_string(i), r, tol, r <= tol});
    }
    return report;
}

PropertyReport check_similarity(const GradedFnOracle& f, const std::vector<GradedPoint>& samples, std::uint64_t seed,
                                double tol) {
    CounterRng root(seed);
    std::vector<CMatrix> sims;
    sims.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const GradedPoint& x = samples[i];
        sims.push_back(random_similarity(root.split(i).next_u64(), x.level(),
                                         [&](const CMatrix& s) { return f.domain(x.conjugated(s)); }));
    }
    return check_similarity(f, samples, sims, tol);
}

PropertyReport check_symmetry(const GradedFnOracle& f, const std::vector<GradedPoint>& samples, double tol) {
    PropertyReport report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double r = op_norm((f(samples[i]) - f(samples[i].swapped())).eval());
        report.add({"symmetry", "sample " + std::to_string(i), r, tol, r <= tol});
    }
    return report;
}

}  // namespace ncsym
