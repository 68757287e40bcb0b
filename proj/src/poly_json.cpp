#include "mrc/poly_json.hpp"

#include "mrc/errors.hpp"
#include "mrc/projective.hpp"

namespace mrc {

using nlohmann::ordered_json;

ordered_json poly_to_json(const MultiPoly& f) {
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : f.terms()) {
    ordered_json exp = ordered_json::array();
    for (auto x : e) exp.push_back(x);
    terms.push_back(ordered_json{{"coef", c}, {"exp", std::move(exp)}});
  }
  return ordered_json{{"q", f.modulus()},
                      {"num_vars", f.num_vars()},
                      {"degree", f.degree()},
                      {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const ordered_json& doc) {
  try {
    const PrimeField field = PrimeField::make(doc.at("q").get<std::uint64_t>());
    const auto num_vars = doc.at("num_vars").get<std::size_t>();
    const auto degree = doc.at("degree").get<unsigned>();
    MultiPoly::TermMap terms;
    for (const auto& t : doc.at("terms")) {
      auto exp = t.at("exp").get<std::vector<std::uint16_t>>();
      auto coef = t.at("coef").get<std::int64_t>();
      if (coef <= 0 || coef >= field.modulus())
        throw Error(ErrorKind::MalformedPolynomial, "coefficient outside [1, q)");
      if (!terms.emplace(std::move(exp), static_cast<std::uint32_t>(coef)).second)
        throw Error(ErrorKind::MalformedPolynomial, "duplicate exponent");
    }
    MultiPoly f = MultiPoly::from_raw_terms(field, num_vars, degree, std::move(terms));
    if (!is_homogeneous_consistent(f))
      throw Error(ErrorKind::MalformedPolynomial, "terms are not homogeneous of the stated degree");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedPolynomial, e.what());
  }
}

ordered_json system_to_json(const PolySystem& system) {
  ordered_json polys = ordered_json::array();
  for (const auto& f : system.polys()) polys.push_back(poly_to_json(f));
  return ordered_json{{"q", system.modulus()}, {"num_vars", system.num_vars()}, {"polys", std::move(polys)}};
}

PolySystem system_from_json(const ordered_json& doc) {
  try {
    PolySystem system(PrimeField::make(doc.at("q").get<std::uint64_t>()),
                      doc.at("num_vars").get<std::size_t>());
    for (const auto& p : doc.at("polys")) system.add(poly_from_json(p));
    return system;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedPolynomial, e.what());
  }
}

ordered_json system_to_json(const PolySystem& system, const std::string& role,
                            const std::vector<ProjPoint>& base_points) {
  ordered_json doc{{"role", role}};
  ordered_json points = ordered_json::array();
  for (const auto& p : base_points) points.push_back(p.coords());
  doc["base_points"] = std::move(points);
  doc["system"] = system_to_json(system);
  return doc;
}

}  // namespace mrc
