#pragma once

// Seeded random complete intersections with marked points for the oracles.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mrc/moduli.hpp"
#include "mrc/poly.hpp"
#include "mrc/projective.hpp"

namespace mrc {

enum class InstanceFamily {
  // Uniformly random forms of the requested degrees.
  RandomForms,
  // A random linear change of coordinates of x0*x3 - x1*x2 (n = 3, one
  // quadric): a smooth quadric surface with both rulings defined over F_q.
  SplitQuadricSurface,
};

std::string_view to_string(InstanceFamily family);
InstanceFamily parse_instance_family(std::string_view name);

struct InstanceRequest {
  ModuliSpec spec;
  std::uint32_t q;
  std::uint64_t seed;
  InstanceFamily family = InstanceFamily::RandomForms;
};

struct Instance {
  InstanceRequest request;
  PolySystem forms;
  // m distinct points of X, linearly independent, with the linear part of
  // their comb system of full rank m*c.
  std::vector<ProjPoint> points;
  // Index of the successful attempt (0-based).
  unsigned attempt;
};

inline constexpr unsigned kMaxGenerationAttempts = 32;

// Deterministic in the request. Each rejected attempt restarts from a fresh
// derived seed; after kMaxGenerationAttempts throws GenerationFailed with
// the rejection reasons.
Instance generate_instance(const InstanceRequest& request);

nlohmann::ordered_json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::ordered_json& doc);

// Compact description for reports: spec, q, seed, family, attempt, points.
nlohmann::ordered_json instance_descriptor(const Instance& instance);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace mrc
