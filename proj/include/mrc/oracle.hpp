#pragma once

// Exhaustive F_q oracles. Every check enumerates projective space in the
// canonical order; parallel runs split that order into fixed chunks and
// concatenate chunk results in order, so output does not depend on the
// thread count (MRC_THREADS caps it).

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrc/poly.hpp"
#include "mrc/projective.hpp"

namespace mrc {

// Number of worker threads: MRC_THREADS if set to a positive integer,
// otherwise the hardware concurrency.
unsigned oracle_thread_count();

// Common zeros of the system in P^{num_vars-1}(F_q), in canonical order.
std::vector<ProjPoint> solve_by_enumeration(const PolySystem& system);
// Same enumeration, read as the points of X = V(forms).
std::vector<ProjPoint> variety_points(const PolySystem& forms);

// Whether every form vanishes at all q+1 points of the line through p and
// r. Throws DegenerateLine if p == r and FieldTooSmall if q < max degree.
bool line_contained(const PolySystem& forms, const ProjPoint& p, const ProjPoint& r);

struct LineSearch {
  // Directions in the DirectionFrame of p, i.e. points of P^{n-1}.
  std::vector<ProjPoint> directions;
  std::size_t count() const noexcept { return directions.size(); }
};

LineSearch lines_through_point(const PolySystem& forms, const ProjPoint& p);

// All Q outside {p_j} such that every line p_j Q lies on X.
std::vector<ProjPoint> geometric_combs(const PolySystem& forms, std::span<const ProjPoint> points);

// The points p_j such that every line p_k p_j (k != j) lies on X. These
// solve the comb system without being combs.
std::vector<ProjPoint> degenerate_comb_branch(const PolySystem& forms, std::span<const ProjPoint> points);

struct Mismatch {
  ProjPoint point;
  // "algebraic_only" or "geometric_only"
  std::string side;
};

struct VerificationReport {
  static constexpr std::size_t kMaxMismatches = 10;

  nlohmann::ordered_json instance;
  std::uint64_t geometric_count = 0;
  std::uint64_t algebraic_count = 0;
  std::uint64_t degenerate_branch_count = 0;
  std::vector<Mismatch> mismatches;
  bool pass = false;
  std::chrono::milliseconds elapsed{0};
  // Check-specific extras (system types, ranks).
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

// solutions(comb_system) == geometric_combs ∪ degenerate_comb_branch.
VerificationReport verify_combs(const PolySystem& forms, std::span<const ProjPoint> points,
                                nlohmann::ordered_json instance = nlohmann::ordered_json::object());

// solutions(line_system) == lines_through_point, and when the linear part of
// the line system has full rank c, the reduced system has type
// union_i {2, ..., d_i}.
VerificationReport verify_lines(const PolySystem& forms, const ProjPoint& p,
                                nlohmann::ordered_json instance = nlohmann::ordered_json::object());

// |solutions(system)| == |solutions(eliminate_linear(system).reduced)| and the
// reduced type is the input type without its degree-1 entries. Here
// geometric_count is the input count and algebraic_count the reduced count.
VerificationReport verify_reduce(const PolySystem& system,
                                 nlohmann::ordered_json instance = nlohmann::ordered_json::object());

}  // namespace mrc
