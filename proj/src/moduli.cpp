#include "mrc/moduli.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mrc {

namespace {

void require_type_args(std::int64_t d, std::int64_t s) {
  if (d < 2 || d > kMaxDegree)
    throw Error(ErrorKind::InvalidDegree, "type block degree must lie in [2, " + std::to_string(kMaxDegree) + "]");
  if (s < 1 || s > kMaxMarkedPoints)
    throw Error(ErrorKind::InvalidDegree, "type block multiplicity must lie in [1, " +
                                              std::to_string(kMaxMarkedPoints) + "]");
}

void append_block(std::vector<unsigned>& out, TypeFamily family, std::int64_t d, std::int64_t s) {
  const unsigned first = family == TypeFamily::TypeI ? 2 : 1;
  for (unsigned k = first; k + 1 <= static_cast<unsigned>(d); ++k)
    for (std::int64_t j = 0; j < s; ++j) out.push_back(k);
  out.push_back(static_cast<unsigned>(d));
}

std::int64_t checked_dimension(const ModuliSpec& spec) {
  // n + m(c - sum d_i) - c
  return spec.n() + spec.m() * (spec.c() - spec.degree_sum()) - spec.c();
}

void enforce_gate(const ModuliSpec& spec, Gate gate) {
  HypothesisReport report = validate_spec(spec);
  if (report.main_theorem_ok) return;
  if (gate == Gate::Structural) {
    bool structural_ok = true;
    for (const auto& check : report.reasons)
      if (check.name != "dimension_inequality") structural_ok = structural_ok && check.passed;
    if (structural_ok) return;
  }
  throw TheoremNotApplicable(std::move(report));
}

}  // namespace

DegreeMultiset as_multiset(std::vector<unsigned> degrees) {
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

ModuliSpec ModuliSpec::make(std::int64_t n, std::int64_t m, const std::vector<std::int64_t>& degrees) {
  if (degrees.empty()) throw Error(ErrorKind::InvalidSpec, "at least one defining degree is required (c >= 1)");
  if (degrees.size() > kMaxEquations) throw Error(ErrorKind::InvalidSpec, "too many defining equations");
  std::vector<unsigned> ds;
  ds.reserve(degrees.size());
  for (auto d : degrees) {
    if (d < 2) throw Error(ErrorKind::InvalidSpec, "every degree must be at least 2 (got " + std::to_string(d) + ")");
    if (d > kMaxDegree) throw Error(ErrorKind::InvalidSpec, "degree " + std::to_string(d) + " exceeds the supported bound");
    ds.push_back(static_cast<unsigned>(d));
  }
  const auto c = static_cast<std::int64_t>(ds.size());
  if (n < c + 1 || n > kMaxAmbientDim)
    throw Error(ErrorKind::InvalidSpec, "need c + 1 <= n <= " + std::to_string(kMaxAmbientDim) +
                                            " (n=" + std::to_string(n) + ", c=" + std::to_string(c) + ")");
  if (m < 1 || m > kMaxMarkedPoints)
    throw Error(ErrorKind::InvalidSpec, "need 1 <= m <= " + std::to_string(kMaxMarkedPoints));
  return ModuliSpec(n, m, std::move(ds));
}

std::int64_t ModuliSpec::degree_sum() const noexcept {
  return std::accumulate(degrees_.begin(), degrees_.end(), std::int64_t{0});
}

std::string to_string(const ModuliSpec& spec) {
  std::ostringstream os;
  os << "n=" << spec.n() << " m=" << spec.m() << " degrees=";
  for (std::size_t i = 0; i < spec.degrees().size(); ++i) os << (i ? "," : "") << spec.degrees()[i];
  return os.str();
}

std::string_view to_string(PhiExclusion e) {
  switch (e) {
    case PhiExclusion::None: return "none";
    case PhiExclusion::TwoQuadricsManyPoints: return "c=2,d=(2,2),m>=6";
    case PhiExclusion::CubicManyPoints: return "c=1,d=3,m>=5";
    case PhiExclusion::QuadricHypersurface: return "c=1,d=2";
  }
  return "unknown";
}

bool HypothesisReport::passed(std::string_view check) const {
  for (const auto& r : reasons)
    if (r.name == check) return r.passed;
  return false;
}

HypothesisReport validate_spec(const ModuliSpec& spec) {
  const auto& d = spec.degrees();
  const bool quadric = spec.c() == 1 && d[0] == 2;

  HypothesisReport report;
  report.reasons = {
      {"m_at_least_3", spec.m() >= 3},
      {"n_at_least_m", spec.n() >= spec.m()},
      {"degrees_at_least_2", std::all_of(d.begin(), d.end(), [](unsigned x) { return x >= 2; })},
      {"not_quadric_hypersurface", !quadric},
      {"dimension_inequality", checked_dimension(spec) >= 1},
  };
  report.main_theorem_ok =
      std::all_of(report.reasons.begin(), report.reasons.end(), [](const NamedCheck& c) { return c.passed; });

  if (quadric)
    report.phi_exclusion = PhiExclusion::QuadricHypersurface;
  else if (spec.c() == 1 && d[0] == 3 && spec.m() >= 5)
    report.phi_exclusion = PhiExclusion::CubicManyPoints;
  else if (spec.c() == 2 && d[0] == 2 && d[1] == 2 && spec.m() >= 6)
    report.phi_exclusion = PhiExclusion::TwoQuadricsManyPoints;
  report.phi_global_morphism = report.phi_exclusion == PhiExclusion::None;
  report.phi_on_general_fiber = !quadric;
  return report;
}

DimensionReport dimension_report(const ModuliSpec& spec) {
  const std::int64_t n = spec.n(), m = spec.m(), c = spec.c(), sum = spec.degree_sum();
  DimensionReport r{};
  r.expected_fiber_dim = (c + 2 - sum) * m + n - c - 3;
  r.fiber_t_dim = r.expected_fiber_dim - (m - 3);
  r.max_locus_dim = n + m * (c - sum) - c;
  r.sections_on_Y = n - m * c;
  r.big_N = n - m * (c - 1);
  return r;
}

DegreeMultiset t1_type(std::int64_t d, std::int64_t s) {
  require_type_args(d, s);
  std::vector<unsigned> out;
  append_block(out, TypeFamily::TypeI, d, s);
  return out;
}

DegreeMultiset t2_type(std::int64_t d, std::int64_t s) {
  require_type_args(d, s);
  std::vector<unsigned> out;
  append_block(out, TypeFamily::TypeII, d, s);
  return out;
}

CIType::CIType(std::int64_t ambient_dim, std::vector<unsigned> equation_degrees)
    : ambient_dim_(ambient_dim), degrees_(std::move(equation_degrees)) {
  if (std::any_of(degrees_.begin(), degrees_.end(), [](unsigned x) { return x < 1; }))
    throw Error(ErrorKind::InvalidDegree, "equation degrees must be at least 1");
}

CIType CIType::from_blocks(std::int64_t ambient_dim, TypeFamily family, const std::vector<unsigned>& degrees,
                           std::int64_t s) {
  std::vector<unsigned> all;
  std::vector<TypeBlock> blocks;
  for (unsigned d : degrees) {
    require_type_args(d, s);
    append_block(all, family, d, s);
    blocks.push_back({family, d, s});
  }
  CIType ci(ambient_dim, std::move(all));
  ci.blocks_ = std::move(blocks);
  return ci;
}

TheoremNotApplicable::TheoremNotApplicable(HypothesisReport report)
    : Error(ErrorKind::TheoremNotApplicable,
            [&] {
              std::string failed;
              for (const auto& r : report.reasons)
                if (!r.passed) failed += (failed.empty() ? "" : ", ") + r.name;
              return "failed checks: " + failed;
            }()),
      report_(std::move(report)) {}

CIType fiber_t_type(const ModuliSpec& spec, Gate gate) {
  enforce_gate(spec, gate);
  return CIType::from_blocks(spec.n() - spec.m() * (spec.c() - 1), TypeFamily::TypeI, spec.degrees(), spec.m());
}

CIType max_locus_type(const ModuliSpec& spec, LocusAmbient ambient, Gate gate) {
  enforce_gate(spec, gate);
  if (dimension_report(spec).locus_empty())
    throw Error(ErrorKind::EmptyLocus, "maximal degeneration locus has negative dimension for " + to_string(spec));
  if (ambient == LocusAmbient::InPn)
    return CIType::from_blocks(spec.n(), TypeFamily::TypeII, spec.degrees(), spec.m());
  return CIType::from_blocks(spec.n() - spec.m() * spec.c(), TypeFamily::TypeI, spec.degrees(), spec.m());
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Fano: return "Fano";
    case Classification::CalabiYau: return "CalabiYau";
    case Classification::NonFano: return "NonFano";
  }
  return "unknown";
}

CIInvariants ci_invariants(const CIType& ci) {
  CIInvariants inv{};
  inv.dimension = ci.ambient_dim() - ci.codimension();
  inv.degree = 1;
  std::int64_t sum = 0;
  for (unsigned d : ci.equation_degrees()) {
    inv.degree *= d;
    sum += d;
  }
  inv.canonical_coefficient = -ci.ambient_dim() - 1 + sum;
  inv.classification = inv.canonical_coefficient < 0    ? Classification::Fano
                       : inv.canonical_coefficient == 0 ? Classification::CalabiYau
                                                        : Classification::NonFano;
  return inv;
}

bool fano_inequality(const ModuliSpec& spec) {
  enforce_gate(spec, Gate::MainTheorem);
  std::int64_t triangular = 0;
  for (unsigned d : spec.degrees()) triangular += std::int64_t{d} * (d - 1) / 2;
  return spec.m() * (triangular - 1) + spec.degree_sum() <= spec.n();
}

std::string_view to_string(CountKind kind) {
  switch (kind) {
    case CountKind::CubicsThrough3: return "cubics";
    case CountKind::LinkingConicsThrough4: return "linking-conics";
    case CountKind::FiberDegree: return "fiber-degree";
  }
  return "unknown";
}

BigInt factorial(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

EnumerativeCount enumerative_count(std::span<const unsigned> degrees, CountKind kind, std::int64_t m) {
  if (degrees.empty()) throw Error(ErrorKind::InvalidDegree, "degree list is empty");
  for (unsigned d : degrees)
    if (d < 2 || d > kMaxDegree) throw Error(ErrorKind::InvalidDegree, "degree " + std::to_string(d) + " out of range");

  EnumerativeCount out{kind, 0, std::nullopt, std::nullopt};
  const auto c = static_cast<std::int64_t>(degrees.size());
  std::int64_t excess = 0;  // sum (d_i - 1)
  BigInt total_degree = 1;
  for (unsigned d : degrees) {
    excess += d - 1;
    total_degree *= d;
  }

  // value = prod (d_i!)^k / d^{k-1}; the division must be exact.
  auto divided_count = [&](unsigned k) {
    BigInt numerator = 1;
    for (unsigned d : degrees) numerator *= boost::multiprecision::pow(factorial(d), k);
    const BigInt denominator = boost::multiprecision::pow(total_degree, k - 1);
    BigInt quotient, remainder;
    boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
    if (remainder != 0)
      throw Error(ErrorKind::FormulaViolation, "count prefactor does not divide exactly");
    return quotient;
  };

  switch (kind) {
    case CountKind::CubicsThrough3:
      out.value = divided_count(3);
      out.variety_dim = 3 * excess - 3;
      out.ambient_dim = *out.variety_dim + c;
      break;
    case CountKind::LinkingConicsThrough4:
      out.value = divided_count(4);
      out.variety_dim = 4 * excess - 4;
      out.ambient_dim = *out.variety_dim + c;
      break;
    case CountKind::FiberDegree: {
      if (m < 1 || m > kMaxMarkedPoints) throw Error(ErrorKind::InvalidSpec, "fiber degree needs 1 <= m");
      BigInt value = 1;
      for (unsigned d : degrees)
        value *= d * boost::multiprecision::pow(factorial(d - 1), static_cast<unsigned>(m));
      out.value = value;
      break;
    }
  }
  return out;
}

PicardReport picard_report(const ModuliSpec& spec) {
  enforce_gate(spec, Gate::MainTheorem);
  PicardReport r{};
  r.pic_finitely_generated = true;
  r.h01_zero = true;
  r.rank_lower_bound = spec.m() >= 4 ? 2 : 1;
  r.fiber_is_complete_intersection = spec.m() == 3;
  return r;
}

}  // namespace mrc
