#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncsym/freepoly.hpp"
#include "ncsym/linfrac.hpp"
#include "ncsym/mat.hpp"
#include "ncsym/ncfun.hpp"
#include "ncsym/realize.hpp"
#include "ncsym/symmap.hpp"

namespace ncsym {

using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Json matrix_to_json(const CMatrix& m);
/// Throws ParseError on malformed input (line/column 0 for structural errors).
CMatrix matrix_from_json(const Json& j);

/// {"components": [matrix, ...]}
Json point_to_json(const GradedPoint& x);
GradedPoint point_from_json(const Json& j);

/// {"level", "coeffs": [matrix...], "tail_bound"}
Json disc_to_json(const DiscAlgElem& g);
DiscAlgElem disc_from_json(const Json& j);

/// {"dims": [h1, k1, h2, k2], "p11", "p12", "p21", "p22"}
Json colligation_to_json(const Colligation& p);
Colligation colligation_from_json(const Json& j);

/// {"checks": [{"name", "residual", "pass"}], "max_residual"}
Json report_to_json(const PropertyReport& r);

/// {"expressible", "residual", "decomposition": [{"factors", "coefficient": [re, im]}]}
Json expressibility_to_json(const Expressibility& e, const std::vector<FreePoly>& generators);

/// {"stages": [{"name", "residual", "tolerance", "pass"}], "p", "U", "verify": {"fit", "holdout"}, ...}
Json pipeline_to_json(const PipelineReport& r);

/// Parses text, mapping library exceptions to ParseError with the reported position.
Json parse_json_text(const std::string& text);
/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace ncsym
