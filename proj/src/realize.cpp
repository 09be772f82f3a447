#include "ncsym/realize.hpp"

#include <cmath>
#include <sstream>

#include "ncsym/rng.hpp"

namespace ncsym {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool is_orthogonal_projection(const CMatrix& p) {
    return op_norm((p - p.adjoint()).eval()) <= 1e-12 && op_norm((p * p - p).eval()) <= 1e-12;
}

std::string describe(const GradedPoint& x, std::size_t index) {
    std::ostringstream os;
    os << "sample #" << index << " (level " << x.level() << ", ||x1|| = " << op_norm(x[0])
       << ", ||x2|| = " << op_norm(x[1]) << ")";
    return os.str();
}

template <typename F>
auto in_stage(const std::string& name, F&& body) {
    try {
        return body();
    } catch (const StageFailure&) {
        throw;
    } catch (const Error& e) {
        throw StageFailure(name, e.what());
    }
}

// Values of the model and its derived maps at one sample, computed once.
struct SampleData {
    GradedPoint x;
    CMatrix phi;
    CMatrix m;
    CMatrix m1;
    CMatrix m2;
    CMatrix w;
    CMatrix wt;
};

std::vector<SampleData> tabulate(const NcModel& model, const GradedFnOracle& phi) {
    const auto [m1, m2] = split_model(model);
    const auto [w, wt] = build_w(model);
    std::vector<SampleData> out;
    out.reserve(model.samples.size());
    for (const auto& x : model.samples)
        out.push_back({x, phi(x), model.m(x), m1(x), m2(x), w(x), wt(x)});
    return out;
}

template <typename F>
double max_over_pairs(const std::vector<SampleData>& data, F&& residual) {
    double worst = 0.0;
    for (const auto& sx : data)
        for (const auto& sy : data)
            if (sx.x.level() == sy.x.level()) worst = std::max(worst, residual(sx, sy));
    return worst;
}

CMatrix x_kron(const CMatrix& xj, Eigen::Index k) { return kron(xj, identity(k)); }

}  // namespace

CMatrix NcModel::x_p(const GradedPoint& x) const {
    if (x.arity() != 2) throw InvalidInput("NcModel::x_p: expects a pair");
    return kron(x[0], P1) + kron(x[1], P2);
}

void NcModel::validate() const {
    if (model_dim < 1) throw InvalidInput("NcModel: model dimension must be positive");
    if (P1.rows() != model_dim || P1.cols() != model_dim || P2.rows() != model_dim || P2.cols() != model_dim)
        throw InvalidInput("NcModel: projections must be model_dim x model_dim");
    if (!is_orthogonal_projection(P1) || !is_orthogonal_projection(P2))
        throw InvalidInput("NcModel: P1 and P2 must be orthogonal projections");
    if (op_norm((P1 + P2 - identity(model_dim)).eval()) > 1e-12) throw InvalidInput("NcModel: P1 + P2 must equal 1");
    if (!m) throw InvalidInput("NcModel: missing model map");
}

SymmetricInstance gen_symmetric_colligation(std::uint64_t seed, Eigen::Index k_half, const std::vector<int>& levels,
                                            const SampleDesign& design) {
    if (k_half < 1) throw InvalidInput("gen_symmetric_colligation: k_half must be at least 1");
    if (levels.empty()) throw InvalidInput("gen_symmetric_colligation: no levels requested");
    for (int n : levels)
        if (n < 1) throw InvalidInput("gen_symmetric_colligation: levels must be positive");
    if (design.base_per_level < 1 || design.holdout_per_level < 0 || !(design.radius > 0.0 && design.radius < 1.0))
        throw InvalidInput("gen_symmetric_colligation: invalid sample design");

    const CounterRng root(seed);
    const Eigen::Index k = k_half;
    const Eigen::Index kk = 2 * k;

    // V = E+ U+ E+^* + E- U- E-^*, E+ spanning the swap-invariant vectors, E- the anti-invariant ones
    CMatrix e_plus = CMatrix::Zero(1 + kk, k + 1);
    CMatrix e_minus = CMatrix::Zero(1 + kk, k);
    e_plus(0, 0) = 1.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        e_plus(1 + i, 1 + i) = kInvSqrt2;
        e_plus(1 + k + i, 1 + i) = kInvSqrt2;
        e_minus(1 + i, i) = kInvSqrt2;
        e_minus(1 + k + i, i) = -kInvSqrt2;
    }
    const CMatrix u_plus = random_unitary(root.split("colligation_even").next_u64(), k + 1);
    const CMatrix u_minus = random_unitary(root.split("colligation_odd").next_u64(), k);
    const CMatrix v = e_plus * u_plus * e_plus.adjoint() + e_minus * u_minus * e_minus.adjoint();
    const Colligation col = Colligation::from_assembled(v, {1, 1, kk, kk});

    NcModel model;
    model.model_dim = kk;
    model.P1 = direct_sum(identity(k), CMatrix::Zero(k, k));
    model.P2 = direct_sum(CMatrix::Zero(k, k), identity(k));
    const CMatrix p1 = model.P1;
    const CMatrix p2 = model.P2;
    auto x_p = [p1, p2](const GradedPoint& x) { return CMatrix(kron(x[0], p1) + kron(x[1], p2)); };
    model.m = [col, x_p, kk](const GradedPoint& x) {
        const Eigen::Index n = x.level();
        const CMatrix pencil = identity(n * kk) - kron_identity(n, col.p22()) * x_p(x);
        return solve(pencil, kron_identity(n, col.p21()));
    };

    SymmetricInstance inst;
    inst.V = col;
    inst.phi = biball_oracle([col, x_p](const GradedPoint& x) { return graded_f_upper(col, x.level(), x_p(x)); });

    const CounterRng fit_stream = root.split("fit_points");
    const CounterRng holdout_stream = root.split("holdout_points");
    for (int n : levels) {
        for (int j = 0; j < design.base_per_level; ++j) {
            const auto s = fit_stream.split(static_cast<std::uint64_t>(n)).split(static_cast<std::uint64_t>(j)).next_u64();
            GradedPoint x = random_biball_point(s, n, design.radius);
            model.samples.push_back(x.swapped());
            model.samples.push_back(std::move(x));
        }
        for (int j = 0; j < design.holdout_per_level; ++j) {
            const auto s =
                holdout_stream.split(static_cast<std::uint64_t>(n)).split(static_cast<std::uint64_t>(j)).next_u64();
            inst.holdout.push_back(random_biball_point(s, n, design.radius));
        }
    }
    inst.model = std::move(model);
    return inst;
}

void require_swap_closed(const std::vector<GradedPoint>& samples) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const GradedPoint sw = samples[i].swapped();
        bool found = false;
        for (const auto& y : samples)
            if (y == sw) {
                found = true;
                break;
            }
        if (!found) throw InvalidInput("sample set is not swap-closed: " + describe(samples[i], i) + " has no swapped partner");
    }
}

ModelResidual model_residual(const NcModel& model, const GradedFnOracle& phi) {
    ModelResidual out;
    std::vector<CMatrix> phis, ms, xps;
    for (const auto& x : model.samples) {
        phis.push_back(phi(x));
        ms.push_back(model.m(x));
        xps.push_back(model.x_p(x));
    }
    for (std::size_t i = 0; i < model.samples.size(); ++i)
        for (std::size_t j = 0; j < model.samples.size(); ++j) {
            const Eigen::Index n = model.samples[i].level();
            if (model.samples[j].level() != n) {
                ++out.skipped_pairs;
                continue;
            }
            ++out.pairs;
            const CMatrix lhs = identity(n) - phis[j].adjoint() * phis[i];
            const CMatrix kernel = identity(xps[i].rows()) - xps[j].adjoint() * xps[i];
            const CMatrix rhs = ms[j].adjoint() * kernel * ms[i];
            out.residual = std::max(out.residual, op_norm((lhs - rhs).eval()));
        }
    return out;
}

NcModel pad_model(const NcModel& model) {
    const Eigen::Index k = model.model_dim;
    NcModel out;
    out.model_dim = 2 * k;
    out.P1 = direct_sum(identity(k), model.P1);
    out.P2 = direct_sum(CMatrix::Zero(k, k), model.P2);
    out.samples = model.samples;
    out.m = [inner = model.m, k](const GradedPoint& x) {
        const Eigen::Index n = x.level();
        const CMatrix mx = inner(x);
        CMatrix padded = CMatrix::Zero(n * 2 * k, mx.cols());
        for (Eigen::Index i = 0; i < n; ++i) padded.block(i * 2 * k + k, 0, k, mx.cols()) = mx.block(i * k, 0, k, mx.cols());
        return padded;
    };
    return out;
}

std::pair<GradedMap, GradedMap> split_model(const NcModel& model) {
    auto compress = [m = model.m](const CMatrix& p) {
        return GradedMap([m, p](const GradedPoint& x) { return CMatrix(kron_identity(x.level(), p) * m(x)); });
    };
    return {compress(model.P1), compress(model.P2)};
}

std::pair<GradedMap, GradedMap> build_w(const NcModel& model) {
    auto [m1, m2] = split_model(model);
    GradedMap w = [m1, m2](const GradedPoint& x) { return CMatrix(kInvSqrt2 * (m1(x) + m2(x.swapped()))); };
    GradedMap wt = [w](const GradedPoint& x) { return w(x.swapped()); };
    return {w, wt};
}

CMatrix x_tensor(const CMatrix& xj, const CMatrix& u_op) { return kron(xj, u_op); }

CMatrix build_A(const GradedPoint& x, const CMatrix& u_op) {
    if (!in_biball(x)) throw DomainError("build_A: point lies outside the biball");
    if (u_op.rows() != u_op.cols()) throw InvalidInput("build_A: U must be square");
    if (op_norm(u_op) > 1.0 + 1e-12) throw DomainError("build_A: U is not a contraction");
    const CMatrix id = identity(x.level() * u_op.rows());
    return inverse(id - x_tensor(x[0], u_op)) + inverse(id - x_tensor(x[1], u_op)) - id;
}

double cayley_check(const GradedPoint& x, const CMatrix& u_op) {
    const CMatrix a = build_A(x, u_op);
    const CMatrix id = identity(a.rows());
    const CMatrix lhs = solve(id + a, id - a);
    const CMatrix rhs = kron_identity(x.level(), u_op) * theta_closed_smap(x, u_op);
    return op_norm((lhs + rhs).eval());
}

double matrix_identity_check(const CMatrix& z1, const CMatrix& z2) {
    if (z1.rows() != z1.cols() || z1.rows() != z2.rows() || z1.cols() != z2.cols() || z1.rows() == 0)
        throw InvalidInput("matrix_identity_check: Z1 and Z2 must be square of equal size");
    auto named_inverse = [](const CMatrix& a, const char* name) {
        try {
            return inverse(a);
        } catch (const SingularMatrix& e) {
            throw SingularMatrix(std::string("matrix_identity_check: pencil ") + name + " is singular",
                                 e.smallest_singular_value());
        }
    };
    const CMatrix z1i = named_inverse(z1, "Z1");
    const CMatrix z2i = named_inverse(z2, "Z2");
    const CMatrix sum_inv = named_inverse(z1 + z2, "Z1 + Z2");
    const CMatrix harmonic = named_inverse(z1i + z2i, "Z1^{-1} + Z2^{-1}");
    const CMatrix d = z1 - z2;
    const CMatrix lhs = 4.0 * harmonic;
    const CMatrix rhs = z1 + z2 - d * sum_inv * d;
    return op_norm((lhs - rhs).eval());
}

USolution solve_U(const NcModel& model, const LurkingOptions& options) {
    require_swap_closed(model.samples);
    const Eigen::Index k = model.model_dim;
    const auto [w, wt] = build_w(model);
    const GradedMap g = [w, wt, k](const GradedPoint& x) {
        return CMatrix(x_kron(x[0], k) * w(x) - x_kron(x[1], k) * wt(x));
    };
    const GradedMap f = [w, wt](const GradedPoint& x) { return CMatrix(w(x) - wt(x)); };
    const VectorFamily pfam = collect_vectors(g, model.samples, k);
    const VectorFamily qfam = collect_vectors(f, model.samples, k);

    USolution out;
    try {
        out.iso = solve_lurking(pfam, qfam, true, options);
    } catch (const PaddingError&) {
        out.iso = solve_lurking(pfam, qfam, false, options);
    }
    const CMatrix& u_op = out.iso.J;
    for (const auto& x : model.samples) {
        const Eigen::Index n = x.level();
        const CMatrix id = identity(n * k);
        const CMatrix lhs = (id - x_tensor(x[0], u_op)) * w(x);
        const CMatrix rhs = (id - x_tensor(x[1], u_op)) * wt(x);
        out.intertwining = std::max(out.intertwining, op_norm((lhs - rhs).eval()));
    }
    return out;
}

GradedMap build_nu(const NcModel& model, const CMatrix& u_op) {
    const auto w = build_w(model).first;
    return [w, u_op](const GradedPoint& x) {
        const Eigen::Index n = x.level();
        return CMatrix((identity(n * u_op.rows()) - x_tensor(x[0], u_op)) * w(x));
    };
}

namespace {

// [e_k^*; xi slice k] stacked over k: the C^n (x) (C (+) K) layout of [top; bottom].
CMatrix interleave(const CMatrix& top, const CMatrix& bottom, Eigen::Index n, Eigen::Index k) {
    CMatrix out(n * (1 + k), top.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.row(i * (1 + k)) = top.row(i);
        out.block(i * (1 + k) + 1, 0, k, top.cols()) = bottom.block(i * k, 0, k, top.cols());
    }
    return out;
}

}  // namespace

TSolution solve_T(const NcModel& model, const CMatrix& u_op, const GradedFnOracle& phi, const LurkingOptions& options) {
    const Eigen::Index k = model.model_dim;
    if (u_op.rows() != k || u_op.cols() != k) throw InvalidInput("solve_T: U must act on the model space");
    const GradedMap nu = build_nu(model, u_op);
    struct Sides {
        CMatrix p, q;
    };
    auto sides = [&](const GradedPoint& x) {
        const Eigen::Index n = x.level();
        const CMatrix a = build_A(x, u_op);
        const CMatrix id = identity(a.rows());
        const CMatrix nux = nu(x);
        const CMatrix xi = kInvSqrt2 * (id - a) * nux;
        const CMatrix eta = kInvSqrt2 * (id + a) * nux;
        return Sides{interleave(identity(n), xi, n, k), interleave(phi(x), eta, n, k)};
    };
    std::vector<Sides> table;
    for (const auto& x : model.samples) table.push_back(sides(x));
    VectorFamily pfam, qfam;
    pfam.ambient_dim = qfam.ambient_dim = 1 + k;
    for (std::size_t s = 0; s < table.size(); ++s) {
        const Eigen::Index n = model.samples[s].level();
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index xi = 0; xi < n; ++xi) {
                pfam.push_back(table[s].p.block(i * (1 + k), xi, 1 + k, 1), {i, xi, s});
                qfam.push_back(table[s].q.block(i * (1 + k), xi, 1 + k, 1), {i, xi, s});
            }
    }

    TSolution out;
    out.iso = solve_lurking(pfam, qfam, false, options);
    out.T = Colligation::from_assembled(out.iso.J, {1, 1, k, k});
    for (std::size_t i = 0; i < model.samples.size(); ++i) {
        const Eigen::Index n = model.samples[i].level();
        const CMatrix lifted = kron_identity(n, out.iso.J) * table[i].p;
        out.lift_residual = std::max(out.lift_residual, op_norm((lifted - table[i].q).eval()));
    }
    return out;
}

Realization assemble_realization(const Colligation& t, const CMatrix& u_op) {
    const auto& d = t.dims();
    if (d.h1 != 1 || d.k1 != 1 || d.h2 != u_op.rows() || d.k2 != u_op.cols())
        throw InvalidInput("assemble_realization: T must act on C (+) K with U on K");
    Realization r;
    r.U = u_op;
    r.T = t;
    const CMatrix flip = direct_sum(identity(1), CMatrix(-u_op));
    r.p = Colligation::from_assembled(t.assembled() * flip, d);
    return r;
}

CMatrix phi_eval(const Realization& r, const DiscAlgElem& g, const FejerPlan& plan) {
    return graded_f_upper(r.p, g.level, theta(g, r.U, plan).value);
}

CMatrix phi_eval_smap(const Realization& r, const GradedPoint& x) {
    return graded_f_upper(r.p, x.level(), theta_closed_smap(x, r.U));
}

double verify_factorization(const Realization& r, const GradedFnOracle& phi, const std::vector<GradedPoint>& points) {
    double worst = 0.0;
    for (const auto& x : points) worst = std::max(worst, op_norm((phi(x) - phi_eval_smap(r, x)).eval()));
    return worst;
}

CMatrix redheffer_route(const Realization& r, const GradedPoint& x) {
    const Eigen::Index n = x.level();
    const Eigen::Index k = r.U.rows();
    const auto [u, v] = uv(x);
    const CMatrix uk = x_kron(u, k);
    const CMatrix vk = x_kron(v, k);
    const Colligation q(uk, vk, vk, uk);
    const Colligation c = redheffer(r.p.tensor_identity(n), q);
    return f_upper(c, kron_identity(n, r.U));
}

CMatrix nonuniqueness_phi0(const DiscAlgElem& g, Scalar z0) {
    if (g.coeffs.size() < 2) throw InvalidInput("nonuniqueness_phi0: needs at least two coefficients");
    if (!(std::abs(z0) > 0.0 && std::abs(z0) < 1.0)) throw DomainError("nonuniqueness_phi0: requires 0 < |z0| < 1");
    const Eigen::Index n = g.level;
    const CMatrix& g0 = g.coeffs[0];
    const CMatrix& g1 = g.coeffs[1];
    const CMatrix pencil = identity(n) - z0 * g0;
    const Eigen::VectorXd s = singular_values(pencil);
    if (s(s.size() - 1) <= kSingularityThreshold * s(0))
        throw SingularMatrix("nonuniqueness_phi0: 1 - g(0) z0 is singular", s(s.size() - 1));
    const Scalar value = (g.value_at(z0) - g0).determinant() -
                         std::pow(z0, static_cast<double>(n)) * g1.determinant() / pencil.determinant();
    return value * identity(n);
}

const std::vector<std::string>& pipeline_stages() {
    static const std::vector<std::string> names{
        "model_relation", "split_model", "averaged_model", "gram_factorization", "u_intertwining",
        "nu_symmetry",    "a_kernel",    "t_lift",         "t_contraction",      "cayley",
        "realization_contraction",       "redheffer_route", "verify_fit",        "verify_holdout",
        "theta_paths"};
    return names;
}

double default_stage_tolerance(const std::string& stage) {
    static const std::map<std::string, double> table{
        {"model_relation", 1e-8},  {"split_model", 1e-8}, {"averaged_model", 1e-8},
        {"gram_factorization", 1e-8}, {"u_intertwining", 1e-8}, {"nu_symmetry", 1e-8},
        {"a_kernel", 1e-8},        {"t_lift", 1e-8},      {"t_contraction", 1e-10},
        {"cayley", 1e-8},          {"realization_contraction", 1e-10}, {"redheffer_route", 1e-8},
        {"verify_fit", 1e-8},      {"verify_holdout", 1e-6}, {"theta_paths", 1e-6}};
    const auto it = table.find(stage);
    if (it == table.end()) throw InvalidInput("unknown pipeline stage '" + stage + "'");
    return it->second;
}

bool PipelineReport::all_pass() const {
    for (const auto& s : stages)
        if (!s.pass) return false;
    return true;
}

std::string PipelineReport::first_failure() const {
    for (const auto& s : stages)
        if (!s.pass) return s.name;
    return {};
}

PipelineReport run_pipeline(const PipelineConfig& config) {
    const SymmetricInstance inst = in_stage("generate", [&] {
        return gen_symmetric_colligation(config.seed, config.k_half, config.levels, config.design);
    });
    const NcModel model = config.pad ? pad_model(inst.model) : inst.model;
    return run_pipeline(model, inst.phi, inst.holdout, config);
}

PipelineReport run_pipeline(const NcModel& model, const GradedFnOracle& phi, const std::vector<GradedPoint>& holdout,
                            const PipelineConfig& config) {
    for (const auto& [name, tol] : config.tolerances) {
        default_stage_tolerance(name);
        if (!(tol >= 0.0)) throw InvalidInput("tolerance for stage '" + name + "' must be non-negative");
    }
    PipelineReport report;
    auto record = [&](const std::string& name, double residual) {
        const auto it = config.tolerances.find(name);
        const double tol = it != config.tolerances.end() ? it->second : default_stage_tolerance(name);
        report.stages.push_back({name, residual, tol, std::isfinite(residual) && residual <= tol});
    };
    const Eigen::Index k = model.model_dim;

    in_stage("model_relation", [&] {
        model.validate();
        require_swap_closed(model.samples);
        record("model_relation", model_residual(model, phi).residual);
        return 0;
    });
    const std::vector<SampleData> data = in_stage("split_model", [&] { return tabulate(model, phi); });

    in_stage("split_model", [&] {
        double worst = 0.0;
        for (const auto& s : data) worst = std::max(worst, op_norm((s.m - s.m1 - s.m2).eval()));
        worst = std::max(worst, max_over_pairs(data, [&](const SampleData& sx, const SampleData& sy) {
            const Eigen::Index n = sx.x.level();
            const CMatrix lhs = identity(n) - sy.phi.adjoint() * sx.phi;
            const CMatrix k1 = x_kron(identity(n) , k) - x_kron(sy.x[0].adjoint() * sx.x[0], k);
            const CMatrix k2 = x_kron(identity(n), k) - x_kron(sy.x[1].adjoint() * sx.x[1], k);
            const CMatrix rhs = sy.m1.adjoint() * k1 * sx.m1 + sy.m2.adjoint() * k2 * sx.m2;
            return op_norm((lhs - rhs).eval());
        }));
        record("split_model", worst);
        return 0;
    });

    in_stage("averaged_model", [&] {
        record("averaged_model", max_over_pairs(data, [&](const SampleData& sx, const SampleData& sy) {
            const Eigen::Index n = sx.x.level();
            const CMatrix lhs = identity(n) - sy.phi.adjoint() * sx.phi;
            const CMatrix k1 = x_kron(identity(n), k) - x_kron(sy.x[0].adjoint() * sx.x[0], k);
            const CMatrix k2 = x_kron(identity(n), k) - x_kron(sy.x[1].adjoint() * sx.x[1], k);
            const CMatrix rhs = sy.w.adjoint() * k1 * sx.w + sy.wt.adjoint() * k2 * sx.wt;
            return op_norm((lhs - rhs).eval());
        }));
        return 0;
    });

    const USolution usol = in_stage("gram_factorization", [&] { return solve_U(model, config.lurking); });
    record("gram_factorization", usol.iso.gram_residual);
    record("u_intertwining", usol.intertwining);
    const CMatrix& u_op = usol.iso.J;
    report.unitary_U = usol.iso.unitary;
    report.u_rank = usol.iso.rank;

    const GradedMap nu = build_nu(model, u_op);
    std::vector<CMatrix> nus, as;
    in_stage("nu_symmetry", [&] {
        double worst = 0.0;
        for (const auto& s : data) {
            nus.push_back(nu(s.x));
            worst = std::max(worst, op_norm((nus.back() - nu(s.x.swapped())).eval()));
        }
        record("nu_symmetry", worst);
        return 0;
    });

    in_stage("a_kernel", [&] {
        for (const auto& s : data) as.push_back(build_A(s.x, u_op));
        double worst = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i)
            for (std::size_t j = 0; j < data.size(); ++j) {
                if (data[i].x.level() != data[j].x.level()) continue;
                const Eigen::Index n = data[i].x.level();
                const CMatrix lhs = identity(n) - data[j].phi.adjoint() * data[i].phi;
                const CMatrix rhs = nus[j].adjoint() * (as[i] + as[j].adjoint()) * nus[i];
                worst = std::max(worst, op_norm((lhs - rhs).eval()));
            }
        record("a_kernel", worst);
        return 0;
    });

    const TSolution tsol = in_stage("t_lift", [&] { return solve_T(model, u_op, phi, config.lurking); });
    report.t_rank = tsol.iso.rank;
    record("t_lift", tsol.lift_residual);
    record("t_contraction", std::max(0.0, op_norm(tsol.iso.J) - 1.0));

    in_stage("cayley", [&] {
        double worst = 0.0;
        for (const auto& s : data) worst = std::max(worst, cayley_check(s.x, u_op));
        record("cayley", worst);
        return 0;
    });

    Realization r = assemble_realization(tsol.T, u_op);
    record("realization_contraction", std::max(0.0, op_norm(r.p.assembled()) - 1.0));

    in_stage("redheffer_route", [&] {
        double worst = 0.0;
        for (const auto& s : data) worst = std::max(worst, op_norm((s.phi - redheffer_route(r, s.x)).eval()));
        record("redheffer_route", worst);
        return 0;
    });

    in_stage("verify_fit", [&] {
        report.fit = verify_factorization(r, phi, model.samples);
        record("verify_fit", report.fit);
        return 0;
    });
    in_stage("verify_holdout", [&] {
        report.holdout = verify_factorization(r, phi, holdout);
        record("verify_holdout", report.holdout);
        return 0;
    });
    in_stage("theta_paths", [&] {
        double worst = 0.0;
        for (const auto& x : holdout) {
            const SPoint sp = s_map(x);
            worst = std::max(worst, op_norm((phi_eval(r, sp.series) - phi_eval_smap(r, x)).eval()));
        }
        record("theta_paths", worst);
        return 0;
    });

    r.diagnostics = report.stages;
    report.realization = std::move(r);
    return report;
}

}  // namespace ncsym
