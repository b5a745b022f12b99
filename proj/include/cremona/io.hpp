// JSON encodings of scalars, polynomials, maps, words and certificates.
#pragma once

#include <json.hpp>

#include "cremona/rewrite.hpp"

namespace cremona {

using Json = nlohmann::json;

/// Parses text; malformed JSON raises ParseError.
Json parse_json(const std::string& text);

Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

/// [{"exp": [a, b, c], "coeff": "p/q"}, ...]
Json to_json(const HomPoly& f);
HomPoly poly_from_json(const Json& j);

/// Nine scalars, row-major.
Json to_json(const LinearMap& a);
LinearMap linear_from_json(const Json& j);

Json to_json(const ProjPoint& p);
ProjPoint point_from_json(const Json& j);
Json to_json(const ProjLine& l);
ProjLine line_from_json(const Json& j);

/// {"factors": [{"linear": [...]}, {"quadratic_proper": {"alpha": [...], "beta": [...]}},
///              {"raw_quadratic": {"triple": [f, g, h]}}]}
/// Maps of higher degree are written as {"rational": {"triple": ...}}.
Json to_json(const Word& w);
Word word_from_json(const Json& j);

/// {"base": [x, y, z], "tower": [{"slope": "p/q"} | {"infinity": true}, ...]}
Json to_json(const BubblePoint& b);
BubblePoint bubble_from_json(const Json& j);

Json to_json(const ContractionProfile& p);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

/// [{"P": true}, {"mu1": true}, {"mu2": true}, {"diag": ["s", "t"]}, ...]
Json to_json(const std::vector<Generator>& g);

}  // namespace cremona
