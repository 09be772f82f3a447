#include "ncsym/json_io.hpp"

namespace ncsym {

namespace {

[[noreturn]] void structure_error(const std::string& msg) { throw ParseError(msg, 0, 0); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) structure_error(std::string("expected an object with field '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) structure_error(std::string("missing field '") + key + "'");
    return *it;
}

Eigen::Index index_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        structure_error(std::string("field '") + key + "' must be a non-negative integer");
    return static_cast<Eigen::Index>(v.get<long long>());
}

double real_value(const Json& v, const char* what) {
    if (!v.is_number()) structure_error(std::string(what) + " must be a number");
    return v.get<double>();
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["data"] = std::move(data);
    return out;
}

CMatrix matrix_from_json(const Json& j) {
    const Eigen::Index rows = index_field(j, "rows");
    const Eigen::Index cols = index_field(j, "cols");
    const Json& data = field(j, "data");
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
        structure_error("matrix data must hold rows * cols entries");
    CMatrix m(rows, cols);
    for (Eigen::Index k = 0; k < rows * cols; ++k) {
        const Json& e = data[static_cast<std::size_t>(k)];
        Scalar z;
        if (e.is_number()) {
            z = e.get<double>();
        } else if (e.is_array() && e.size() == 2) {
            z = Scalar(real_value(e[0], "real part"), real_value(e[1], "imaginary part"));
        } else {
            structure_error("matrix entry must be a number or [re, im]");
        }
        m(k / cols, k % cols) = z;
    }
    if (!all_finite(m)) structure_error("matrix has non-finite entries");
    return m;
}

Json point_to_json(const GradedPoint& x) {
    Json comps = Json::array();
    for (const auto& c : x.components()) comps.push_back(matrix_to_json(c));
    Json out;
    out["components"] = std::move(comps);
    return out;
}

GradedPoint point_from_json(const Json& j) {
    const Json& comps = field(j, "components");
    if (!comps.is_array()) structure_error("'components' must be an array");
    std::vector<CMatrix> ms;
    for (const auto& c : comps) ms.push_back(matrix_from_json(c));
    return GradedPoint(std::move(ms));
}

Json disc_to_json(const DiscAlgElem& g) {
    Json coeffs = Json::array();
    for (const auto& c : g.coeffs) coeffs.push_back(matrix_to_json(c));
    Json out;
    out["level"] = g.level;
    out["coeffs"] = std::move(coeffs);
    out["tail_bound"] = g.tail_bound;
    return out;
}

DiscAlgElem disc_from_json(const Json& j) {
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) structure_error("'coeffs' must be an array");
    std::vector<CMatrix> cs;
    for (const auto& c : coeffs) cs.push_back(matrix_from_json(c));
    const double tail = j.contains("tail_bound") ? real_value(j["tail_bound"], "tail_bound") : 0.0;
    DiscAlgElem g(std::move(cs), tail);
    if (j.contains("level") && index_field(j, "level") != g.level) structure_error("'level' disagrees with coefficients");
    return g;
}

Json colligation_to_json(const Colligation& p) {
    const auto& d = p.dims();
    Json out;
    out["dims"] = Json::array({d.h1, d.k1, d.h2, d.k2});
    out["p11"] = matrix_to_json(p.p11());
    out["p12"] = matrix_to_json(p.p12());
    out["p21"] = matrix_to_json(p.p21());
    out["p22"] = matrix_to_json(p.p22());
    return out;
}

Colligation colligation_from_json(const Json& j) {
    const Json& dims = field(j, "dims");
    if (!dims.is_array() || dims.size() != 4) structure_error("'dims' must be [h1, k1, h2, k2]");
    BlockDims d;
    Eigen::Index* slots[] = {&d.h1, &d.k1, &d.h2, &d.k2};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!dims[i].is_number_integer() || dims[i].get<long long>() < 0) structure_error("'dims' entries must be non-negative integers");
        *slots[i] = static_cast<Eigen::Index>(dims[i].get<long long>());
    }
    try {
        return Colligation(d, matrix_from_json(field(j, "p11")), matrix_from_json(field(j, "p12")),
                           matrix_from_json(field(j, "p21")), matrix_from_json(field(j, "p22")));
    } catch (const InvalidInput& e) {
        structure_error(e.what());
    }
}

Json report_to_json(const PropertyReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["residual"] = c.residual;
        e["pass"] = c.pass;
        checks.push_back(std::move(e));
    }
    Json out;
    out["checks"] = std::move(checks);
    out["max_residual"] = r.max_residual;
    return out;
}

Json expressibility_to_json(const Expressibility& e, const std::vector<FreePoly>& generators) {
    Json gens = Json::array();
    for (const auto& g : generators) gens.push_back(g.to_string());
    Json dec = Json::array();
    for (const auto& term : e.decomposition) {
        Json t;
        t["factors"] = term.factors;
        t["coefficient"] = Json::array({term.coefficient.real(), term.coefficient.imag()});
        dec.push_back(std::move(t));
    }
    Json out;
    out["expressible"] = e.expressible;
    out["residual"] = e.residual;
    out["generators"] = std::move(gens);
    out["decomposition"] = std::move(dec);
    return out;
}

Json pipeline_to_json(const PipelineReport& r) {
    Json stages = Json::array();
    for (const auto& s : r.stages) {
        Json e;
        e["name"] = s.name;
        e["residual"] = s.residual;
        e["tolerance"] = s.tolerance;
        e["pass"] = s.pass;
        stages.push_back(std::move(e));
    }
    Json out;
    out["stages"] = std::move(stages);
    out["p"] = colligation_to_json(r.realization.p);
    out["U"] = matrix_to_json(r.realization.U);
    out["verify"] = {{"fit", r.fit}, {"holdout", r.holdout}};
    out["u_unitary"] = r.unitary_U;
    out["u_rank"] = r.u_rank;
    out["t_rank"] = r.t_rank;
    out["pass"] = r.all_pass();
    return out;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte offset -> line/column
        int line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("invalid JSON", line, column);
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ncsym
