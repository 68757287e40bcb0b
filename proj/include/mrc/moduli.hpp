#pragma once

// Exact invariants of the fiber F_t of the forgetful map on the space of
// degree-m rational curves through m general points of a complete
// intersection X of type (d_1, ..., d_c) in P^n.
//
// Everything here is integer arithmetic; products and factorial-type
// counts use arbitrary precision.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrc/errors.hpp"

namespace mrc {

using BigInt = boost::multiprecision::cpp_int;

// Sorted ascending.
using DegreeMultiset = std::vector<unsigned>;
DegreeMultiset as_multiset(std::vector<unsigned> degrees);

// Bounds keeping every dimension formula inside int64.
inline constexpr std::int64_t kMaxAmbientDim = 1'000'000;
inline constexpr std::int64_t kMaxMarkedPoints = 10'000;
inline constexpr std::int64_t kMaxDegree = 1'000;
inline constexpr std::size_t kMaxEquations = 1'000;

class ModuliSpec {
 public:
  // Throws InvalidSpec unless every d_i >= 2, c >= 1, n >= c + 1, m >= 1 and
  // all values are within the bounds above. m < 3 is representable (the
  // oracles use m = 1, 2) and rejected by validate_spec instead.
  static ModuliSpec make(std::int64_t n, std::int64_t m, const std::vector<std::int64_t>& degrees);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t m() const noexcept { return m_; }
  std::int64_t c() const noexcept { return static_cast<std::int64_t>(degrees_.size()); }
  const std::vector<unsigned>& degrees() const noexcept { return degrees_; }
  std::int64_t degree_sum() const noexcept;

  friend bool operator==(const ModuliSpec&, const ModuliSpec&) = default;

 private:
  ModuliSpec(std::int64_t n, std::int64_t m, std::vector<unsigned> degrees)
      : n_(n), m_(m), degrees_(std::move(degrees)) {}

  std::int64_t n_;
  std::int64_t m_;
  std::vector<unsigned> degrees_;
};

std::string to_string(const ModuliSpec& spec);

// Cases in which the span map is not a morphism on all of F.
enum class PhiExclusion { None, TwoQuadricsManyPoints, CubicManyPoints, QuadricHypersurface };
std::string_view to_string(PhiExclusion e);

struct NamedCheck {
  std::string name;
  bool passed;
};

struct HypothesisReport {
  bool main_theorem_ok = false;
  // m_at_least_3, n_at_least_m, degrees_at_least_2, not_quadric_hypersurface,
  // dimension_inequality, in this order.
  std::vector<NamedCheck> reasons;
  bool phi_global_morphism = false;
  PhiExclusion phi_exclusion = PhiExclusion::None;
  bool phi_on_general_fiber = false;

  bool passed(std::string_view check) const;
};

HypothesisReport validate_spec(const ModuliSpec& spec);

struct DimensionReport {
  std::int64_t expected_fiber_dim;  // dim F
  std::int64_t fiber_t_dim;         // dim F_t
  std::int64_t max_locus_dim;       // dim Y
  std::int64_t sections_on_Y;       // h^0(Y, O(1))
  std::int64_t big_N;               // F_t lies in P^N

  bool fiber_empty() const noexcept { return fiber_t_dim < 0; }
  bool locus_empty() const noexcept { return max_locus_dim < 0; }
};

DimensionReport dimension_report(const ModuliSpec& spec);

// s copies each of 2..d-1 plus one d. Throws InvalidDegree for d < 2 or s < 1.
DegreeMultiset t1_type(std::int64_t d, std::int64_t s);
// s copies each of 1..d-1 plus one d.
DegreeMultiset t2_type(std::int64_t d, std::int64_t s);

enum class TypeFamily { TypeI, TypeII };

// One T_1(d, s) or T_2(d, s) block of a complete-intersection type.
struct TypeBlock {
  TypeFamily family;
  unsigned d;
  std::int64_t s;

  friend bool operator==(const TypeBlock&, const TypeBlock&) = default;
};

class CIType {
 public:
  CIType(std::int64_t ambient_dim, std::vector<unsigned> equation_degrees);
  // Concatenation of one block per degree, in input order.
  static CIType from_blocks(std::int64_t ambient_dim, TypeFamily family,
                            const std::vector<unsigned>& degrees, std::int64_t s);

  std::int64_t ambient_dim() const noexcept { return ambient_dim_; }
  // In construction order (block by block).
  const std::vector<unsigned>& equation_degrees() const noexcept { return degrees_; }
  DegreeMultiset multiset() const { return as_multiset(degrees_); }
  const std::vector<TypeBlock>& blocks() const noexcept { return blocks_; }
  std::int64_t codimension() const noexcept { return static_cast<std::int64_t>(degrees_.size()); }
  // More equations than the ambient dimension.
  bool overdetermined() const noexcept { return codimension() > ambient_dim_; }

 private:
  std::int64_t ambient_dim_;
  std::vector<unsigned> degrees_;
  std::vector<TypeBlock> blocks_;
};

// Which hypotheses a type query insists on. MainTheorem is the full gate of
// validate_spec. Structural drops only the dimension inequality, which the
// two-quadric, three-point family does not need.
enum class Gate { MainTheorem, Structural };

class TheoremNotApplicable : public Error {
 public:
  explicit TheoremNotApplicable(HypothesisReport report);
  const HypothesisReport& report() const noexcept { return report_; }

 private:
  HypothesisReport report_;
};

// F_t as a complete intersection of type union_i T_1(d_i, m) in P^{n-m(c-1)}.
CIType fiber_t_type(const ModuliSpec& spec, Gate gate = Gate::MainTheorem);

enum class LocusAmbient { InPn, InPnMinusMc };

// The maximal-degeneration locus Y: union_i T_2(d_i, m) in P^n, or after
// eliminating the mc linear equations, union_i T_1(d_i, m) in P^{n-mc}.
// Throws EmptyLocus when dim Y < 0.
CIType max_locus_type(const ModuliSpec& spec, LocusAmbient ambient, Gate gate = Gate::MainTheorem);

enum class Classification { Fano, CalabiYau, NonFano };
std::string_view to_string(Classification c);

struct CIInvariants {
  std::int64_t dimension;
  BigInt degree;
  // K = O(canonical_coefficient)
  std::int64_t canonical_coefficient;
  Classification classification;
};

CIInvariants ci_invariants(const CIType& ci);

// m * (sum_i d_i(d_i-1)/2 - 1) + sum_i d_i <= n
bool fano_inequality(const ModuliSpec& spec);

enum class CountKind { CubicsThrough3, LinkingConicsThrough4, FiberDegree };
std::string_view to_string(CountKind kind);

struct EnumerativeCount {
  CountKind kind;
  BigInt value;
  // For the two named counts: the dimension of X for which the count is
  // finite, and the ambient dimension of X (variety_dim + c).
  std::optional<std::int64_t> variety_dim;
  std::optional<std::int64_t> ambient_dim;
};

// `m` is used by FiberDegree only. Throws InvalidDegree on a bad degree
// list and FormulaViolation if a prefactor fails to divide.
EnumerativeCount enumerative_count(std::span<const unsigned> degrees, CountKind kind, std::int64_t m = 0);

struct PicardReport {
  bool pic_finitely_generated;
  std::int64_t rank_lower_bound;
  bool fiber_is_complete_intersection;
  bool h01_zero;
};

PicardReport picard_report(const ModuliSpec& spec);

BigInt factorial(unsigned k);

}  // namespace mrc
