#include "mrc/instance.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "mrc/errors.hpp"
#include "mrc/incidence.hpp"
#include "mrc/oracle.hpp"
#include "mrc/poly_json.hpp"

namespace mrc {

namespace {

using nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform draw in [0, bound) by rejection, portable across standard libraries.
std::uint64_t draw_below(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / bound * bound;
  std::uint64_t x;
  do x = engine(); while (x >= limit);
  return x % bound;
}

std::size_t matrix_rank(std::vector<std::vector<std::uint32_t>> rows, PrimeField field) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const std::uint32_t inv = field.inv(rows[rank][col]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const std::uint32_t factor = field.mul(rows[r][col], inv);
      for (std::size_t k = col; k < cols; ++k) rows[r][k] = field.sub(rows[r][k], field.mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  return rank;
}

PolySystem random_forms(const InstanceRequest& req, PrimeField field, unsigned attempt) {
  const auto nv = static_cast<std::size_t>(req.spec.n() + 1);
  PolySystem forms(field, nv);
  const auto& degrees = req.spec.degrees();
  for (std::size_t i = 0; i < degrees.size(); ++i)
    forms.add(random_homogeneous(nv, degrees[i], field, derive_seed(req.seed, attempt, i)));
  return forms;
}

PolySystem split_quadric(const InstanceRequest& req, PrimeField field, unsigned attempt) {
  if (req.spec.n() != 3 || req.spec.degrees() != std::vector<unsigned>{2})
    throw Error(ErrorKind::InvalidSpec, "the split-quadric family needs n = 3 and degrees = 2");
  std::mt19937_64 engine(derive_seed(req.seed, attempt, 0));
  std::vector<std::vector<std::uint32_t>> a(4, std::vector<std::uint32_t>(4));
  do {
    for (auto& row : a)
      for (auto& x : row) x = static_cast<std::uint32_t>(draw_below(engine, field.modulus()));
  } while (matrix_rank(a, field) < 4);

  std::vector<MultiPoly> images;
  for (const auto& row : a) {
    std::vector<std::int64_t> coefs(row.begin(), row.end());
    images.push_back(MultiPoly::linear_form(field, coefs));
  }
  const std::pair<Exponent, std::int64_t> terms[] = {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, -1}};
  const MultiPoly hyperbolic = MultiPoly::from_terms(field, 4, 2, terms);
  PolySystem forms(field, 4);
  forms.add(substitute_linear(hyperbolic, images));
  return forms;
}

ordered_json spec_json(const ModuliSpec& spec) {
  return ordered_json{{"n", spec.n()}, {"m", spec.m()}, {"degrees", spec.degrees()}};
}

ordered_json points_json(const std::vector<ProjPoint>& points) {
  ordered_json out = ordered_json::array();
  for (const auto& p : points) out.push_back(p.coords());
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

std::string_view to_string(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::RandomForms: return "random";
    case InstanceFamily::SplitQuadricSurface: return "split-quadric";
  }
  return "unknown";
}

InstanceFamily parse_instance_family(std::string_view name) {
  if (name == "random") return InstanceFamily::RandomForms;
  if (name == "split-quadric") return InstanceFamily::SplitQuadricSurface;
  throw Error(ErrorKind::InvalidSpec, "unknown instance family '" + std::string(name) + "'");
}

Instance generate_instance(const InstanceRequest& req) {
  const PrimeField field = PrimeField::make(req.q);
  const auto m = static_cast<std::size_t>(req.spec.m());
  const auto c = static_cast<std::size_t>(req.spec.c());
  std::vector<std::string> rejections;

  for (unsigned attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    PolySystem forms = req.family == InstanceFamily::SplitQuadricSurface ? split_quadric(req, field, attempt)
                                                                          : random_forms(req, field, attempt);
    auto reject = [&](const std::string& why) { rejections.push_back("attempt " + std::to_string(attempt) + ": " + why); };

    if (std::any_of(forms.polys().begin(), forms.polys().end(), [](const MultiPoly& f) { return f.is_zero(); })) {
      reject("a sampled form is zero");
      continue;
    }
    std::vector<ProjPoint> pool = variety_points(forms);
    if (pool.size() < m) {
      reject("X has only " + std::to_string(pool.size()) + " F_q-points");
      continue;
    }

    // Partial Fisher-Yates shuffle for m distinct points.
    std::mt19937_64 engine(derive_seed(req.seed, attempt, 1000));
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::size_t>(draw_below(engine, pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<ProjPoint> points(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));

    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& p : points) rows.push_back(p.coords());
    if (matrix_rank(rows, field) < m) {
      reject("marked points are linearly dependent");
      continue;
    }
    const Elimination elim = eliminate_linear(comb_system(forms, points));
    if (elim.eliminated_count < m * c) {
      reject("linear part of the comb system has rank " + std::to_string(elim.eliminated_count) + " < mc = " +
             std::to_string(m * c));
      continue;
    }
    return Instance{req, std::move(forms), std::move(points), attempt};
  }

  std::string message = "no valid configuration for " + to_string(req.spec) + " q=" + std::to_string(req.q) +
                        " seed=" + std::to_string(req.seed) + " after " + std::to_string(kMaxGenerationAttempts) +
                        " attempts";
  if (!rejections.empty()) message += "; last: " + rejections.back();
  throw Error(ErrorKind::GenerationFailed, message);
}

ordered_json instance_descriptor(const Instance& instance) {
  return ordered_json{{"spec", spec_json(instance.request.spec)},
                      {"q", instance.request.q},
                      {"seed", instance.request.seed},
                      {"family", to_string(instance.request.family)},
                      {"attempt", instance.attempt},
                      {"points", points_json(instance.points)}};
}

ordered_json instance_to_json(const Instance& instance) {
  ordered_json doc = instance_descriptor(instance);
  ordered_json forms = ordered_json::array();
  for (const auto& f : instance.forms.polys()) forms.push_back(poly_to_json(f));
  doc["forms"] = std::move(forms);
  return doc;
}

Instance instance_from_json(const ordered_json& doc) {
  try {
    const auto& s = doc.at("spec");
    const ModuliSpec spec = ModuliSpec::make(s.at("n").get<std::int64_t>(), s.at("m").get<std::int64_t>(),
                                             s.at("degrees").get<std::vector<std::int64_t>>());
    const auto q = doc.at("q").get<std::uint32_t>();
    const PrimeField field = PrimeField::make(q);
    InstanceRequest req{spec, q, doc.at("seed").get<std::uint64_t>(),
                        parse_instance_family(doc.value("family", std::string("random")))};
    PolySystem forms(field, static_cast<std::size_t>(spec.n() + 1));
    for (const auto& f : doc.at("forms")) forms.add(poly_from_json(f));
    std::vector<ProjPoint> points;
    for (const auto& p : doc.at("points")) points.push_back(ProjPoint::from_ints(field, p.get<std::vector<std::int64_t>>()));
    if (points.size() != static_cast<std::size_t>(spec.m()) || forms.size() != spec.degrees().size())
      throw Error(ErrorKind::MalformedPolynomial, "instance point or form count does not match its spec");
    for (std::size_t i = 0; i < forms.size(); ++i)
      if (forms[i].degree() != spec.degrees()[i])
        throw Error(ErrorKind::MalformedPolynomial, "form degree does not match the declared degrees");
    return Instance{req, std::move(forms), std::move(points), doc.value("attempt", 0u)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedPolynomial, std::string("instance document: ") + e.what());
  }
}

}  // namespace mrc
