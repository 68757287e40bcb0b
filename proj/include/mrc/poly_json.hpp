#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mrc/poly.hpp"

namespace mrc {

class ProjPoint;

// Canonical polynomial document:
//   {"q": int, "num_vars": int, "degree": int,
//    "terms": [{"coef": int, "exp": [int, ...]}, ...]}
// with terms in graded-lex order.
nlohmann::ordered_json poly_to_json(const MultiPoly& f);
// Throws MalformedPolynomial (or InvalidField) on anything that does not
// describe a consistent homogeneous polynomial.
MultiPoly poly_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json system_to_json(const PolySystem& system);
PolySystem system_from_json(const nlohmann::ordered_json& doc);

// System document wrapped with {"role": ..., "base_points": [[...], ...]}.
nlohmann::ordered_json system_to_json(const PolySystem& system, const std::string& role,
                                      const std::vector<ProjPoint>& base_points);

}  // namespace mrc
