#include "ncsym/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ncsym/freepoly.hpp"
#include "ncsym/json_io.hpp"
#include "ncsym/realize.hpp"
#include "ncsym/suite.hpp"
#include "ncsym/symmap.hpp"

namespace ncsym {

namespace {

struct Common {
    std::optional<std::uint64_t> seed;
    std::string out_path;
    bool json = false;
};

std::uint64_t parse_seed_text(const std::string& text, const char* origin) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw InvalidInput(std::string(origin) + ": '" + text + "' is not an unsigned 64-bit integer");
    return v;
}

/// --seed, then NCSYM_SEED, then 1.
std::uint64_t resolve_seed(const Common& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("NCSYM_SEED")) return parse_seed_text(env, "NCSYM_SEED");
    return 1;
}

void add_common(CLI::App* cmd, Common& c, std::string& seed_text) {
    cmd->add_option("--seed", seed_text, "Root seed (falls back to NCSYM_SEED, then 1)");
    cmd->add_option("--out", c.out_path, "Also write the JSON report to this file");
    cmd->add_flag("--json", c.json, "Print the JSON report instead of a summary");
}

void emit(const Common& c, const Json& report, const std::string& summary, std::ostream& out) {
    if (!c.out_path.empty()) {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) throw InvalidInput("cannot open '" + c.out_path + "' for writing");
        f << dump(report);
    }
    if (c.json) out << dump(report);
    else out << summary;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_express(const Common& c, const std::string& poly_text, const std::vector<std::string>& gen_texts,
                int degree_bound, std::ostream& out) {
    if (gen_texts.empty()) throw InvalidInput("express: at least one --generators entry is required");
    if (degree_bound < 0) throw InvalidInput("express: --degree-bound must be non-negative");
    const FreePoly target = FreePoly::parse(poly_text);
    std::vector<FreePoly> gens;
    int d = target.arity();
    for (const auto& g : gen_texts) {
        gens.push_back(FreePoly::parse(g));
        d = std::max(d, gens.back().arity());
    }
    for (auto& g : gens) g = g.with_arity(d);
    const Expressibility e = expressibility(target.with_arity(d), gens, degree_bound);
    Json report = expressibility_to_json(e, gens);
    report["target"] = target.to_string();
    report["degree_bound"] = degree_bound;
    std::ostringstream summary;
    if (e.expressible) {
        summary << "expressible: " << e.reconstruct(gens, d).to_string() << "\n";
        for (const auto& t : e.decomposition) {
            summary << "  (" << t.coefficient.real() << "," << t.coefficient.imag() << ") *";
            if (t.factors.empty()) summary << " 1";
            for (int f : t.factors) summary << " g" << f;
            summary << "\n";
        }
    } else {
        summary << "not expressible up to degree " << degree_bound << "; least-squares residual " << e.residual << "\n";
    }
    emit(c, report, summary.str(), out);
    return e.expressible ? kExitPass : kExitInfeasible;
}

int cmd_pipeline(const Common& c, PipelineConfig cfg, std::ostream& out, std::ostream& err) {
    cfg.seed = resolve_seed(c);
    try {
        const PipelineReport rep = run_pipeline(cfg);
        Json report = pipeline_to_json(rep);
        report["seed"] = cfg.seed;
        report["k_half"] = cfg.k_half;
        std::ostringstream summary;
        summary << "seed " << cfg.seed << ", k_half " << cfg.k_half << "\n";
        for (const auto& s : rep.stages)
            summary << "  " << (s.pass ? "ok   " : "FAIL ") << s.name << " " << s.residual << " (tol " << s.tolerance
                    << ")\n";
        summary << "fit " << rep.fit << ", holdout " << rep.holdout << "\n";
        emit(c, report, summary.str(), out);
        if (!rep.all_pass()) {
            err << "stage '" << rep.first_failure() << "' exceeded its tolerance\n";
            return kExitStageFailure;
        }
        return kExitPass;
    } catch (const StageFailure& e) {
        Json report;
        report["seed"] = cfg.seed;
        report["error"] = e.what();
        report["stage"] = e.stage();
        emit(c, report, std::string(e.what()) + "\n", out);
        err << e.what() << "\n";
        return kExitStageFailure;
    }
}

int cmd_suite(const Common& c, const std::vector<int>& only, int sweep, std::ostream& out) {
    SuiteConfig cfg;
    cfg.seed = resolve_seed(c);
    cfg.only = only;
    if (cfg.only.empty()) throw InvalidInput("suite: empty criterion selection");
    if (sweep < 1) throw InvalidInput("suite: --sweep must be at least 1");
    std::sort(cfg.only.begin(), cfg.only.end());
    cfg.only.erase(std::unique(cfg.only.begin(), cfg.only.end()), cfg.only.end());

    bool all_pass = true;
    std::ostringstream summary;
    Json report;
    if (sweep == 1) {
        const auto results = run_suite(cfg);
        report = suite_to_json(cfg.seed, results);
        for (const auto& r : results) {
            summary << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.measured << " "
                    << r.comparison << " " << r.threshold << " (" << r.detail << ")\n";
            all_pass = all_pass && r.pass;
        }
    } else {
        Json rows = Json::array();
        const std::uint64_t base = cfg.seed;
        for (int i = 0; i < sweep; ++i) {
            cfg.seed = base + static_cast<std::uint64_t>(i);
            const auto results = run_suite(cfg);
            Json row = suite_to_json(cfg.seed, results);
            summary << "seed " << cfg.seed << ": " << row["passed"].get<int>() << " passed, "
                    << row["failed"].get<int>() << " failed\n";
            all_pass = all_pass && row["failed"].get<int>() == 0;
            rows.push_back(std::move(row));
        }
        report["sweep"] = std::move(rows);
    }
    emit(c, report, summary.str(), out);
    return all_pass ? kExitPass : kExitStageFailure;
}

int cmd_smap(const Common& c, const std::string& point_path, int truncation, std::ostream& out) {
    const GradedPoint x = point_from_json(parse_json_text(read_file(point_path)));
    const SPoint sp = truncation > 0 ? s_map(x, truncation) : s_map(x);
    const OmegaMembership om = omega_membership(sp.series);
    Json report;
    report["series"] = disc_to_json(sp.series);
    report["sup_norm"] = sup_norm(sp.series);
    report["max_norm"] = x.norm();
    std::ostringstream summary;
    summary << "level " << sp.series.level << ", " << sp.series.coeffs.size() << " coefficients, tail bound "
            << sp.series.tail_bound << ", sup norm " << report["sup_norm"].get<double>() << " (max norm " << x.norm()
            << "), " << (om.status == Membership::inside ? "inside" : om.status == Membership::outside ? "outside" : "undecided")
            << " the unit ball\n";
    emit(c, report, summary.str(), out);
    return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ncsym: symmetric nc-function realizations at matrix scale"};
    app.require_subcommand(1);
    Common common;
    std::string seed_text;

    std::string poly_text;
    std::vector<std::string> gen_texts;
    int degree_bound = 3;
    auto* express = app.add_subcommand("express", "Decide whether a polynomial is a polynomial in the generators");
    express->add_option("polynomial", poly_text, "Target polynomial, e.g. \"z*w*z + w*z*w\"")->required();
    express->add_option("--generators", gen_texts, "Generator polynomials, ';'-separated or repeated")->delimiter(';');
    express->add_option("--degree-bound", degree_bound, "Total degree bound for generator products");
    add_common(express, common, seed_text);

    PipelineConfig pcfg;
    std::map<std::string, double> tol_values;
    bool no_pad = false;
    std::vector<int> levels{1, 2, 3};
    int k_half = 2;
    auto* pipeline = app.add_subcommand("pipeline", "Generate a symmetric instance and realize it");
    pipeline->add_option("--levels", levels, "Sample levels, comma-separated")->delimiter(',');
    pipeline->add_option("--k-half", k_half, "Dimension of each half of the model space");
    pipeline->add_flag("--no-pad", no_pad, "Skip doubling the model space");
    for (const auto& stage : pipeline_stages())
        pipeline->add_option_function<double>(
            "--tol." + stage, [&tol_values, stage](const double& v) { tol_values[stage] = v; },
            "Tolerance for stage " + stage);
    add_common(pipeline, common, seed_text);

    std::vector<int> only{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    int sweep = 1;
    auto* suite = app.add_subcommand("suite", "Run the acceptance battery");
    suite->add_option("--only", only, "Criterion ids, comma-separated")->delimiter(',');
    suite->add_option("--sweep", sweep, "Number of consecutive seeds");
    add_common(suite, common, seed_text);

    std::string point_path;
    int truncation = 0;
    auto* smap = app.add_subcommand("smap", "Symmetrize a matrix pair read from JSON");
    smap->add_option("point", point_path, "JSON file {\"components\": [matrix, matrix]}")->required();
    smap->add_option("--truncation", truncation, "Number of coefficients (default: automatic)");
    add_common(smap, common, seed_text);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (!seed_text.empty()) common.seed = parse_seed_text(seed_text, "--seed");
        if (express->parsed()) return cmd_express(common, poly_text, gen_texts, degree_bound, out);
        if (pipeline->parsed()) {
            pcfg.k_half = k_half;
            pcfg.levels = levels;
            pcfg.pad = !no_pad;
            pcfg.tolerances = tol_values;
            return cmd_pipeline(common, pcfg, out, err);
        }
        if (suite->parsed()) return cmd_suite(common, only, sweep, out);
        if (smap->parsed()) return cmd_smap(common, point_path, truncation, out);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const StageFailure& e) {
        err << e.what() << "\n";
        return kExitStageFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace ncsym
