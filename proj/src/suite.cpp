#include "ncsym/suite.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "ncsym/freepoly.hpp"
#include "ncsym/funcalc.hpp"
#include "ncsym/linfrac.hpp"
#include "ncsym/lurking.hpp"
#include "ncsym/realize.hpp"
#include "ncsym/rng.hpp"
#include "ncsym/symmap.hpp"

namespace ncsym {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// Independent per-trial seed: root -> criterion -> trial.
std::uint64_t trial_seed(std::uint64_t root, int criterion, int trial, const char* tag = "trial") {
    return CounterRng(root).split(static_cast<std::uint64_t>(criterion)).split(tag).split(static_cast<std::uint64_t>(trial)).next_u64();
}

int draw_int(CounterRng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

CriterionResult wolf(std::uint64_t) {
    CriterionResult r;
    const auto t0 = Clock::now();
    const std::vector<FreePoly> gens{FreePoly::parse("z + w"), FreePoly::parse("z*w + w*z")};
    const Expressibility bad = expressibility(FreePoly::parse("z*w*z + w*z*w"), gens, 3);
    const Expressibility e2 = expressibility(FreePoly::parse("z*w + w*z"), gens, 3);
    const Expressibility sq = expressibility(FreePoly::parse("z*z + z*w + w*z + w*w"), gens, 3);
    r.seconds = seconds_since(t0);
    r.measured = bad.residual;
    r.threshold = 0.1;
    r.comparison = ">";
    const bool exact = e2.expressible && sq.expressible && e2.residual <= 1e-12 && sq.residual <= 1e-12;
    r.pass = !bad.expressible && bad.residual > 0.1 && exact && r.seconds < 1.0;
    r.detail = "exact decompositions " + std::string(exact ? "found" : "missing") + ", residuals " + fmt(e2.residual) +
               " and " + fmt(sq.residual);
    return r;
}

CriterionResult q_norm(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-10;
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 1 + t % 8;
        const GradedPoint x = random_biball_point(trial_seed(seed, 2, t), n, 0.99);
        r.measured = std::max(r.measured, std::abs(op_norm(q_mat(x)) - x.norm()));
    }
    r.pass = r.measured <= r.threshold;
    r.detail = "100 points, levels 1..8";
    return r;
}

CriterionResult smap_props(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-9;
    const int truncation = 24;
    // S as a graded map into C^n (x) C^N: row block i holds the i-th row of every coefficient
    const GradedFnOracle s_oracle = biball_oracle(
        [truncation](const GradedPoint& x) {
            const SPoint sp = s_map(x, truncation);
            CMatrix out = CMatrix::Zero(x.level() * truncation, x.level());
            for (int j = 0; j < truncation; ++j) {
                CMatrix e = CMatrix::Zero(truncation, 1);
                e(j, 0) = 1.0;
                out += kron(sp.series.coeffs[static_cast<std::size_t>(j)], e);
            }
            return out;
        },
        truncation, 1);
    double sup_gap = -1.0;
    bool below_one = true;
    for (int t = 0; t < 50; ++t) {
        CounterRng rng(trial_seed(seed, 3, t, "levels"));
        const GradedPoint x = random_biball_point(trial_seed(seed, 3, t), draw_int(rng, 1, 3), 0.8);
        const GradedPoint y = random_biball_point(trial_seed(seed, 3, t, "partner"), draw_int(rng, 1, 3), 0.8);
        const std::vector<GradedPoint> pts{x, y};
        PropertyReport rep = check_direct_sums(s_oracle, pts, r.threshold);
        rep.merge(check_similarity(s_oracle, pts, trial_seed(seed, 3, t, "similarity"), r.threshold));
        rep.merge(check_symmetry(s_oracle, pts, r.threshold));
        r.measured = std::max(r.measured, rep.max_residual);
        for (const auto& p : pts) {
            const double sup = sup_norm(s_map(p).series);
            sup_gap = std::max(sup_gap, sup - p.norm());
            below_one = below_one && sup < 1.0;
        }
    }
    r.pass = r.measured <= r.threshold && sup_gap <= 1e-8 && below_one;
    r.detail = "max(sup_norm - max-norm) = " + fmt(sup_gap) + (below_one ? ", all sup norms < 1" : ", a sup norm >= 1");
    return r;
}

CriterionResult lft_identity(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-10;
    const auto t0 = Clock::now();
    double norm_excess = -1.0;
    for (int t = 0; t < 100; ++t) {
        CounterRng rng(trial_seed(seed, 4, t, "dims"));
        const BlockDims d{draw_int(rng, 1, 3), draw_int(rng, 1, 3), draw_int(rng, 1, 3), draw_int(rng, 1, 3)};
        const CMatrix pm = random_contraction(trial_seed(seed, 4, t), d.h1 + d.k2, d.k1 + d.h2, 0.999);
        const Colligation p = Colligation::from_assembled(pm, d);
        const CMatrix x = random_contraction(trial_seed(seed, 4, t, "argument"), d.k1, d.h1, 0.95);
        r.measured = std::max(r.measured, realization_residual(p, x));
        norm_excess = std::max(norm_excess, op_norm(f_lower(p, x)) - op_norm(pm));
    }
    r.seconds = seconds_since(t0);
    r.pass = r.measured <= r.threshold && norm_excess <= 1e-10 && r.seconds < 5.0;
    r.detail = "max(||F|| - ||p||) = " + fmt(norm_excess);
    return r;
}

CriterionResult redheffer_law(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-10;
    for (int t = 0; t < 50; ++t) {
        CounterRng rng(trial_seed(seed, 5, t, "dims"));
        const BlockDims da{draw_int(rng, 1, 3), draw_int(rng, 1, 3), draw_int(rng, 1, 3), draw_int(rng, 1, 3)};
        const BlockDims db{draw_int(rng, 1, 3), draw_int(rng, 1, 3), da.h1, da.k1};
        const Colligation a = Colligation::from_assembled(
            random_contraction(trial_seed(seed, 5, t, "A"), da.h1 + da.k2, da.k1 + da.h2, 0.9), da);
        const Colligation b = Colligation::from_assembled(
            random_contraction(trial_seed(seed, 5, t, "B"), db.h1 + db.k2, db.k1 + db.h2, 0.9), db);
        const CMatrix x = random_contraction(trial_seed(seed, 5, t, "X"), da.h2, da.k2, 0.9);
        const CMatrix lhs = f_upper(redheffer(b, a), x);
        const CMatrix rhs = f_upper(b, f_upper(a, x));
        r.measured = std::max(r.measured, op_norm((lhs - rhs).eval()));
    }
    r.pass = r.measured <= r.threshold;
    r.detail = "50 triples, block dims 1..3";
    return r;
}

CriterionResult harmonic_identity(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-11;
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 1 + t % 6;
        // real parts >= 1/2 keep every pencil of the identity well conditioned
        const CMatrix z1 = identity(n) + 0.5 * random_strict_contraction(trial_seed(seed, 6, t, "Z1"), n, 0.999);
        const CMatrix z2 = identity(n) + 0.5 * random_strict_contraction(trial_seed(seed, 6, t, "Z2"), n, 0.999);
        r.measured = std::max(r.measured, matrix_identity_check(z1, z2));
    }
    r.pass = r.measured <= r.threshold;
    r.detail = "100 pairs, n = 1..6";
    return r;
}

CriterionResult fejer(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-6;
    int max_k = 0;
    bool all_converged = true;
    bool all_strict = true;
    for (int t = 0; t < 24; ++t) {
        CounterRng rng(trial_seed(seed, 7, t, "dims"));
        // pushed out to the edge ||x|| = 0.8, where the series converges slowest
        const GradedPoint raw = random_biball_point(trial_seed(seed, 7, t), draw_int(rng, 1, 3), 0.8);
        const double scale = 0.8 / raw.norm();
        const GradedPoint x(CMatrix(scale * raw[0]), CMatrix(scale * raw[1]));
        const CMatrix u = random_unitary(trial_seed(seed, 7, t, "U"), draw_int(rng, 1, 8));
        const DiscAlgElem g = s_map(x).series;
        const ThetaResult th = theta(g, u);
        r.measured = std::max(r.measured, op_norm((th.value - theta_closed_smap(x, u)).eval()));
        max_k = std::max(max_k, th.achieved_k);
        all_converged = all_converged && th.converged;
        all_strict = all_strict && vn_norm_check(g, u).strict;
    }
    r.pass = r.measured <= r.threshold && all_converged && max_k <= 4096 && all_strict;
    r.detail = "max achieved_k = " + std::to_string(max_k) + (all_strict ? ", norm check strict" : ", norm check not strict");
    return r;
}

CriterionResult lurking(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-9;
    bool all_rejected = true;
    for (int t = 0; t < 20; ++t) {
        CounterRng rng(trial_seed(seed, 8, t, "dims"));
        const Eigen::Index k = draw_int(rng, 2, 8);
        const Eigen::Index rank = draw_int(rng, 1, static_cast<int>(k));
        const int count = draw_int(rng, static_cast<int>(rank), 3 * static_cast<int>(k));
        const CMatrix basis = random_gaussian(trial_seed(seed, 8, t, "basis"), k, rank);
        const CMatrix coords = random_gaussian(trial_seed(seed, 8, t, "coords"), rank, count);
        const CMatrix pm = basis * coords;
        const CMatrix j0 = random_unitary(trial_seed(seed, 8, t, "J0"), k);
        VectorFamily p, q, q_bad;
        p.ambient_dim = q.ambient_dim = q_bad.ambient_dim = k;
        for (int a = 0; a < count; ++a) {
            p.push_back(pm.col(a), {0, 0, static_cast<std::size_t>(a)});
            q.push_back(j0 * pm.col(a), {0, 0, static_cast<std::size_t>(a)});
            q_bad.push_back((a == 0 ? 1.0 + 1e-3 : 1.0) * j0 * pm.col(a), {0, 0, static_cast<std::size_t>(a)});
        }
        const IsometrySolution sol = solve_lurking(p, q, true);
        r.measured = std::max(r.measured, op_norm((sol.J * pm - j0 * pm).eval()));
        try {
            solve_lurking(p, q_bad, true);
            all_rejected = false;
        } catch (const HypothesisViolation&) {
        }
    }
    r.pass = r.measured <= r.threshold && all_rejected;
    r.detail = std::string("gram perturbation 1e-3 ") + (all_rejected ? "rejected" : "accepted") + " in all 20 seeds";
    return r;
}

CriterionResult end_to_end(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-6;
    const auto t0 = Clock::now();
    double worst_stage = 0.0;
    int failures = 0;
    std::string first_failure;
    for (int t = 0; t < 20; ++t) {
        PipelineConfig cfg;
        cfg.seed = trial_seed(seed, 9, t);
        cfg.k_half = 1 + t % 4;
        cfg.levels = {1, 2, 3};
        try {
            const PipelineReport rep = run_pipeline(cfg);
            r.measured = std::max(r.measured, rep.holdout);
            for (const auto& s : rep.stages)
                if (s.name != "verify_holdout" && s.name != "theta_paths") worst_stage = std::max(worst_stage, s.residual);
            if (!rep.all_pass()) {
                ++failures;
                if (first_failure.empty()) first_failure = rep.first_failure();
            }
        } catch (const StageFailure& e) {
            ++failures;
            if (first_failure.empty()) first_failure = e.stage();
        }
    }
    r.seconds = seconds_since(t0);
    r.pass = failures == 0 && worst_stage <= 1e-8 && r.measured <= r.threshold && r.seconds < 60.0;
    r.detail = "worst fit-stage residual " + fmt(worst_stage) + ", failing instances " + std::to_string(failures) +
               (first_failure.empty() ? "" : " (first at " + first_failure + ")");
    return r;
}

CriterionResult cayley(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-9;
    for (int t = 0; t < 50; ++t) {
        CounterRng rng(trial_seed(seed, 10, t, "dims"));
        const GradedPoint x = random_biball_point(trial_seed(seed, 10, t), draw_int(rng, 1, 3), 0.9);
        const CMatrix u = random_unitary(trial_seed(seed, 10, t, "U"), draw_int(rng, 1, 8));
        r.measured = std::max(r.measured, cayley_check(x, u));
    }
    r.pass = r.measured <= r.threshold;
    r.detail = "50 pairs, unitary U of dimension 1..8";
    return r;
}

CriterionResult nonuniqueness(std::uint64_t seed) {
    CriterionResult r;
    r.threshold = 1e-10;
    for (int t = 0; t < 50; ++t) {
        CounterRng rng(trial_seed(seed, 11, t, "dims"));
        const GradedPoint x = random_biball_point(trial_seed(seed, 11, t), draw_int(rng, 1, 3), 0.9);
        r.measured = std::max(r.measured, op_norm(nonuniqueness_phi0(s_map(x).series, 0.3)));
    }
    const double scalar = nonuniqueness_phi0(scalar_series({0.0, 0.0, 0.5}), 0.3)(0, 0).real();
    const double scalar_err = std::abs(scalar - 0.045);

    CounterRng rng(trial_seed(seed, 11, 0, "direct_sum"));
    auto draw = [&] {
        std::vector<Scalar> c(3);
        for (auto& v : c) v = 0.3 * rng.complex_normal();
        return scalar_series(c);
    };
    const DiscAlgElem g = draw();
    const DiscAlgElem h = draw();
    const CMatrix joint = nonuniqueness_phi0(direct_sum(g, h), 0.3);
    const CMatrix split = direct_sum(nonuniqueness_phi0(g, 0.3), nonuniqueness_phi0(h, 0.3));
    const double violation = op_norm((joint - split).eval());

    r.pass = r.measured <= r.threshold && scalar_err <= 1e-12 && violation >= 1e-3;
    r.detail = "z^2/2 at 0.3 gives " + fmt(scalar) + ", direct-sum violation " + fmt(violation);
    return r;
}

CriterionResult (*const kRunners[])(std::uint64_t) = {wolf,    q_norm,  smap_props, lft_identity, redheffer_law, harmonic_identity,
                                                      fejer,   lurking, end_to_end, cayley,       nonuniqueness};

std::vector<CriterionResult> run_battery(std::uint64_t seed, const std::vector<int>& ids) {
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id, seed));
    return out;
}

}  // namespace

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names{
        "wolf_inexpressibility", "q_norm_identity", "smap_nc_properties", "lft_realization_identity",
        "redheffer_law",         "harmonic_mean_identity", "fejer_functional_calculus", "lurking_isometry",
        "end_to_end_realization", "cayley_identity", "nonuniqueness", "determinism"};
    return names;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > 11) throw InvalidInput("run_criterion: id must lie in 1..11");
    CriterionResult r;
    try {
        const auto t0 = Clock::now();
        r = kRunners[id - 1](seed);
        if (r.seconds == 0.0) r.seconds = seconds_since(t0);
    } catch (const Error& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
        r.measured = std::numeric_limits<double>::infinity();
    }
    r.id = id;
    r.name = criterion_names()[static_cast<std::size_t>(id - 1)];
    return r;
}

std::vector<CriterionResult> run_suite(const SuiteConfig& config) {
    if (config.only.empty()) throw InvalidInput("run_suite: empty criterion selection");
    for (int id : config.only)
        if (id < 1 || id > kCriterionCount) throw InvalidInput("run_suite: criterion ids lie in 1..12");
    std::vector<int> ids;
    bool determinism = false;
    for (int id : config.only) {
        if (id == 12) determinism = true;
        else ids.push_back(id);
    }
    std::vector<CriterionResult> out = run_battery(config.seed, ids);
    if (determinism) {
        const auto t0 = Clock::now();
        const std::vector<int> rerun_ids = ids.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11} : ids;
        const std::string first = dump(suite_to_json(config.seed, ids.empty() ? run_battery(config.seed, rerun_ids) : out));
        const std::string second = dump(suite_to_json(config.seed, run_battery(config.seed, rerun_ids)));
        CriterionResult r;
        r.id = 12;
        r.name = criterion_names()[11];
        r.comparison = "==";
        r.threshold = 0.0;
        std::size_t diff = 0;
        while (diff < first.size() && diff < second.size() && first[diff] == second[diff]) ++diff;
        const bool same = first == second;
        r.measured = same ? 0.0 : 1.0;
        r.pass = same;
        r.detail = same ? "two runs produced " + std::to_string(first.size()) + " identical bytes"
                        : "reports differ from byte " + std::to_string(diff);
        r.seconds = seconds_since(t0);
        out.push_back(r);
    }
    return out;
}

Json suite_to_json(std::uint64_t seed, const std::vector<CriterionResult>& results) {
    Json criteria = Json::array();
    int passed = 0;
    for (const auto& r : results) {
        Json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["measured"] = r.measured;
        e["comparison"] = r.comparison;
        e["threshold"] = r.threshold;
        e["detail"] = r.detail;
        criteria.push_back(std::move(e));
        passed += r.pass ? 1 : 0;
    }
    Json out;
    out["seed"] = seed;
    out["criteria"] = std::move(criteria);
    out["passed"] = passed;
    out["failed"] = static_cast<int>(results.size()) - passed;
    return out;
}

}  // namespace ncsym
