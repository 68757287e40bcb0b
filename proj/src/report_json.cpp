#include "mrc/report_json.hpp"

namespace mrc {

using nlohmann::ordered_json;

ordered_json bigint_json(const BigInt& value) {
  static const BigInt kSafe = (BigInt(1) << 53) - 1;
  if (boost::multiprecision::abs(value) <= kSafe) return value.convert_to<std::int64_t>();
  return value.str();
}

ordered_json to_json(const ModuliSpec& spec) {
  return ordered_json{{"n", spec.n()}, {"m", spec.m()}, {"degrees", spec.degrees()}};
}

ordered_json to_json(const HypothesisReport& report) {
  ordered_json checks = ordered_json::object();
  for (const auto& r : report.reasons) checks[r.name] = r.passed;
  ordered_json exclusion = nullptr;
  if (report.phi_exclusion != PhiExclusion::None) exclusion = to_string(report.phi_exclusion);
  return ordered_json{{"main_theorem_ok", report.main_theorem_ok},
                      {"checks", std::move(checks)},
                      {"phi_global_morphism", report.phi_global_morphism},
                      {"phi_exclusion", std::move(exclusion)},
                      {"phi_on_general_fiber", report.phi_on_general_fiber}};
}

ordered_json to_json(const DimensionReport& r) {
  return ordered_json{{"expected_fiber_dim", r.expected_fiber_dim},
                      {"fiber_t_dim", r.fiber_t_dim},
                      {"max_locus_dim", r.max_locus_dim},
                      {"sections_on_Y", r.sections_on_Y},
                      {"big_N", r.big_N},
                      {"fiber_empty", r.fiber_empty()},
                      {"locus_empty", r.locus_empty()}};
}

ordered_json to_json(const CIType& ci) {
  return ordered_json{{"ambient_dim", ci.ambient_dim()},
                      {"equation_degrees", ci.equation_degrees()},
                      {"overdetermined", ci.overdetermined()}};
}

ordered_json to_json(const CIInvariants& inv) {
  return ordered_json{{"dimension", inv.dimension},
                      {"degree", bigint_json(inv.degree)},
                      {"canonical_coefficient", inv.canonical_coefficient},
                      {"classification", to_string(inv.classification)}};
}

ordered_json to_json(const EnumerativeCount& count) {
  ordered_json doc{{"kind", to_string(count.kind)}, {"count", bigint_json(count.value)}};
  if (count.variety_dim) doc["variety_dim"] = *count.variety_dim;
  if (count.ambient_dim) doc["ambient_dim"] = *count.ambient_dim;
  return doc;
}

ordered_json to_json(const PicardReport& r) {
  return ordered_json{{"pic_finitely_generated", r.pic_finitely_generated},
                      {"rank_lower_bound", r.rank_lower_bound},
                      {"fiber_is_complete_intersection", r.fiber_is_complete_intersection},
                      {"h01_zero", r.h01_zero}};
}

ordered_json to_json(const VerificationReport& report) {
  ordered_json mismatches = ordered_json::array();
  for (const auto& m : report.mismatches)
    mismatches.push_back(ordered_json{{"point", m.point.coords()}, {"side", m.side}});
  return ordered_json{{"instance", report.instance},
                      {"geometric_count", report.geometric_count},
                      {"algebraic_count", report.algebraic_count},
                      {"degenerate_branch_count", report.degenerate_branch_count},
                      {"mismatches", std::move(mismatches)},
                      {"details", report.details},
                      {"verdict", report.pass ? "pass" : "fail"},
                      {"elapsed_ms", report.elapsed.count()}};
}

}  // namespace mrc
