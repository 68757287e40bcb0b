#include "mrc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mrc/errors.hpp"
#include "mrc/incidence.hpp"
#include "mrc/instance.hpp"
#include "mrc/moduli.hpp"
#include "mrc/oracle.hpp"
#include "mrc/report_json.hpp"

namespace mrc::cli {

namespace {

using nlohmann::ordered_json;

// Oracle parameter box.
constexpr std::int64_t kBoxMaxN = 6;
constexpr std::int64_t kBoxMaxC = 3;
constexpr std::int64_t kBoxMaxM = 4;
constexpr std::uint32_t kBoxPrimes[] = {3, 5, 7, 11, 13};

struct Options {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string degrees;
  std::string kind;
  std::uint64_t q = 0;
  std::uint64_t seed = 0;
  unsigned trials = 1;
  std::string family = "random";
  std::string system = "combs";
  std::string instance_path;
  std::string out_path;
  bool json = false;
};

void check_box(const ModuliSpec& spec, std::uint64_t q) {
  PrimeField::make(q);
  const bool q_ok = std::find(std::begin(kBoxPrimes), std::end(kBoxPrimes), q) != std::end(kBoxPrimes);
  if (!q_ok || spec.n() > kBoxMaxN || spec.c() > kBoxMaxC || spec.m() > kBoxMaxM)
    throw Error(ErrorKind::CapacityExceeded,
                "outside the supported box (n <= 6, q in {3,5,7,11,13}, c <= 3, m <= 4): " + to_string(spec) +
                    " q=" + std::to_string(q));
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<unsigned>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// Matrix rendering of a union of T_1 / T_2 blocks: s rows of 2..d-1 (or
// 1..d-1) with d beside the middle row.
void render_type(std::ostream& os, const CIType& ci, const std::string& indent) {
  if (ci.blocks().empty()) {
    os << indent << "(" << join(ci.equation_degrees()) << ")\n";
    return;
  }
  for (const auto& b : ci.blocks()) {
    const unsigned first = b.family == TypeFamily::TypeI ? 2 : 1;
    os << indent << (b.family == TypeFamily::TypeI ? "T1(" : "T2(") << b.d << "," << b.s << ")";
    if (first + 1 > b.d) {
      os << " = ( " << b.d << " )\n";
      continue;
    }
    os << " =\n";
    std::string row;
    for (unsigned k = first; k < b.d; ++k) row += std::to_string(k) + " ";
    const std::int64_t middle = (b.s - 1) / 2;
    const std::string pad(std::to_string(b.d).size(), ' ');
    for (std::int64_t r = 0; r < b.s; ++r)
      os << indent << "  ( " << row << "| " << (r == middle ? std::to_string(b.d) : pad) << " )\n";
  }
}

ModuliSpec spec_from(const Options& o, std::int64_t m) {
  return ModuliSpec::make(o.n, m, parse_degree_list(o.degrees));
}

int cmd_check(const Options& o, std::ostream& out) {
  const ModuliSpec spec = spec_from(o, o.m);
  const HypothesisReport hyp = validate_spec(spec);
  const DimensionReport dims = dimension_report(spec);
  std::optional<bool> fano;
  std::optional<PicardReport> picard;
  if (hyp.main_theorem_ok) {
    fano = fano_inequality(spec);
    picard = picard_report(spec);
  }

  if (o.json) {
    ordered_json doc{{"spec", to_json(spec)}};
    doc.update(to_json(hyp));
    doc["dimensions"] = to_json(dims);
    doc["fano_inequality"] = fano ? ordered_json(*fano) : ordered_json(nullptr);
    doc["picard"] = picard ? to_json(*picard) : ordered_json(nullptr);
    out << dump(doc);
  } else {
    out << "spec                      " << to_string(spec) << "\n";
    out << "main theorem applies      " << yes_no(hyp.main_theorem_ok) << "\n";
    for (const auto& r : hyp.reasons)
      out << "  " << std::left << std::setw(26) << r.name << (r.passed ? "pass" : "FAIL") << "\n";
    out << "phi morphism on F         " << yes_no(hyp.phi_global_morphism);
    if (hyp.phi_exclusion != PhiExclusion::None) out << " (excluded case " << to_string(hyp.phi_exclusion) << ")";
    out << "\n";
    out << "phi morphism on F_t       " << yes_no(hyp.phi_on_general_fiber) << "\n";
    out << "dim F                     " << dims.expected_fiber_dim << "\n";
    out << "dim F_t                   " << dims.fiber_t_dim << (dims.fiber_empty() ? " (empty)" : "") << "\n";
    out << "dim Y                     " << dims.max_locus_dim << (dims.locus_empty() ? " (empty)" : "") << "\n";
    out << "h0(Y, O(1))               " << dims.sections_on_Y << "\n";
    out << "N                         " << dims.big_N << "\n";
    if (fano) out << "fano inequality           " << yes_no(*fano) << "\n";
    if (picard) {
      out << "Pic finitely generated    " << yes_no(picard->pic_finitely_generated) << "\n";
      out << "rank Pic >=               " << picard->rank_lower_bound << "\n";
      out << "F is a CI                 " << yes_no(picard->fiber_is_complete_intersection) << "\n";
      out << "h^{0,1} = 0               " << yes_no(picard->h01_zero) << "\n";
    }
  }
  return hyp.main_theorem_ok ? kExitPass : kExitFail;
}

int cmd_type(const Options& o, std::ostream& out) {
  const ModuliSpec spec = spec_from(o, o.m);
  CIType fiber = [&] {
    try {
      return fiber_t_type(spec);
    } catch (const TheoremNotApplicable& e) {
      if (o.json) out << dump(ordered_json{{"spec", to_json(spec)}, {"hypotheses", to_json(e.report())}});
      throw;
    }
  }();
  const CIInvariants inv = ci_invariants(fiber);
  std::optional<CIType> locus_pn, locus_small;
  if (!dimension_report(spec).locus_empty()) {
    locus_pn = max_locus_type(spec, LocusAmbient::InPn);
    locus_small = max_locus_type(spec, LocusAmbient::InPnMinusMc);
  }

  if (o.json) {
    ordered_json fiber_doc = to_json(fiber);
    fiber_doc["invariants"] = to_json(inv);
    ordered_json locus = nullptr;
    if (locus_pn) {
      ordered_json a = to_json(*locus_pn), b = to_json(*locus_small);
      a["invariants"] = to_json(ci_invariants(*locus_pn));
      b["invariants"] = to_json(ci_invariants(*locus_small));
      locus = ordered_json{{"in_Pn", std::move(a)}, {"in_Pn_minus_mc", std::move(b)}};
    }
    out << dump(ordered_json{{"spec", to_json(spec)}, {"fiber_t", std::move(fiber_doc)}, {"max_locus", std::move(locus)}});
  } else {
    out << "F_t in P^" << fiber.ambient_dim() << ":\n";
    render_type(out, fiber, "  ");
    out << "  dim " << inv.dimension << ", degree " << inv.degree << ", K = O(" << inv.canonical_coefficient
        << "), " << to_string(inv.classification) << "\n";
    if (locus_pn) {
      out << "Y in P^" << locus_pn->ambient_dim() << ":\n";
      render_type(out, *locus_pn, "  ");
      out << "Y in P^" << locus_small->ambient_dim() << ":\n";
      render_type(out, *locus_small, "  ");
      out << "  dim " << ci_invariants(*locus_small).dimension << "\n";
    } else {
      out << "Y is empty\n";
    }
  }
  return kExitPass;
}

int cmd_count(const Options& o, std::ostream& out) {
  const auto raw = parse_degree_list(o.degrees);
  std::vector<unsigned> degrees;
  for (auto d : raw) {
    if (d < 2 || d > kMaxDegree) throw Error(ErrorKind::InvalidSpec, "degree " + std::to_string(d) + " out of range");
    degrees.push_back(static_cast<unsigned>(d));
  }
  CountKind kind;
  if (o.kind == "cubics") {
    kind = CountKind::CubicsThrough3;
  } else if (o.kind == "linking-conics") {
    kind = CountKind::LinkingConicsThrough4;
  } else {
    kind = CountKind::FiberDegree;
    if (o.m < 1) throw Error(ErrorKind::InvalidSpec, "--kind fiber-degree needs --m");
  }
  const EnumerativeCount count = enumerative_count(degrees, kind, o.m);
  if (o.json) {
    ordered_json doc{{"degrees", degrees}};
    if (kind == CountKind::FiberDegree) doc["m"] = o.m;
    doc.update(to_json(count));
    out << dump(doc);
  } else {
    out << count.value << "\n";
    if (count.variety_dim)
      out << "  for X of dimension " << *count.variety_dim << " in P^" << *count.ambient_dim << "\n";
  }
  return kExitPass;
}

std::vector<Instance> verify_instances(const Options& o, std::int64_t m) {
  std::vector<Instance> out;
  if (!o.instance_path.empty()) {
    std::ifstream in(o.instance_path);
    if (!in) throw Error(ErrorKind::InvalidSpec, "cannot read instance file " + o.instance_path);
    ordered_json doc;
    try {
      doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::MalformedPolynomial, std::string("instance file: ") + e.what());
    }
    Instance inst = instance_from_json(doc);
    check_box(inst.request.spec, inst.request.q);
    out.push_back(std::move(inst));
    return out;
  }
  const ModuliSpec spec = spec_from(o, m);
  check_box(spec, o.q);
  const InstanceFamily family = parse_instance_family(o.family);
  for (unsigned t = 0; t < o.trials; ++t)
    out.push_back(generate_instance({spec, static_cast<std::uint32_t>(o.q), o.seed + t, family}));
  return out;
}

int cmd_verify(const std::string& which, const Options& o, std::ostream& out) {
  std::vector<VerificationReport> reports;
  if (which == "lines") {
    for (const auto& inst : verify_instances(o, 1))
      reports.push_back(verify_lines(inst.forms, inst.points.front(), instance_descriptor(inst)));
  } else if (which == "combs") {
    for (const auto& inst : verify_instances(o, o.m))
      reports.push_back(verify_combs(inst.forms, inst.points, instance_descriptor(inst)));
  } else {
    const bool lines = o.system == "lines";
    for (const auto& inst : verify_instances(o, lines ? 1 : o.m)) {
      ordered_json desc = instance_descriptor(inst);
      desc["system"] = o.system;
      const PolySystem system =
          lines ? line_system(inst.forms, inst.points.front()) : comb_system(inst.forms, inst.points);
      reports.push_back(verify_reduce(system, std::move(desc)));
    }
  }

  const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  if (o.json) {
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    out << dump(ordered_json{{"command", "verify " + which},
                             {"verdict", pass ? "pass" : "fail"},
                             {"trials", reports.size()},
                             {"reports", std::move(list)}});
  } else {
    const char* first = which == "reduce" ? "input" : "geometric";
    const char* second = which == "reduce" ? "reduced" : "algebraic";
    for (const auto& r : reports) {
      out << "seed " << r.instance.value("seed", std::uint64_t{0}) << ": " << (r.pass ? "pass" : "FAIL") << "  "
          << first << " " << r.geometric_count << ", " << second << " " << r.algebraic_count;
      if (which == "combs") out << ", degenerate " << r.degenerate_branch_count;
      out << "  (" << r.elapsed.count() << " ms)\n";
      for (const auto& mm : r.mismatches) out << "    " << mm.side << " " << mm.point.to_string() << "\n";
    }
    out << "verify " << which << ": " << (pass ? "pass" : "FAIL") << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_instance(const Options& o, std::ostream& out) {
  const ModuliSpec spec = spec_from(o, o.m);
  check_box(spec, o.q);
  const Instance inst =
      generate_instance({spec, static_cast<std::uint32_t>(o.q), o.seed, parse_instance_family(o.family)});
  const std::string text = dump(instance_to_json(inst));
  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidSpec, "cannot write " + o.out_path);
    file << text;
  }
  return kExitPass;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec:
    case ErrorKind::InvalidDegree:
    case ErrorKind::InvalidField:
    case ErrorKind::FieldTooSmall:
    case ErrorKind::MalformedPolynomial:
    case ErrorKind::IncompatibleOperands:
      return kExitUsage;
    case ErrorKind::CapacityExceeded:
      return kExitCapacity;
    default:
      return kExitFail;
  }
}

}  // namespace

std::vector<std::int64_t> parse_degree_list(std::string_view text) {
  std::vector<std::int64_t> out;
  if (text.empty()) throw Error(ErrorKind::InvalidSpec, "empty degree list");
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw Error(ErrorKind::InvalidSpec, "malformed degree list '" + std::string(text) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

CommandResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Options o;

  CLI::App app{"Moduli of rational curves through general points on complete intersections"};
  app.name("mrc");
  app.require_subcommand(1, 1);

  auto add_spec = [&](CLI::App* sub, bool need_m) {
    sub->add_option("--n", o.n, "ambient projective dimension")->required();
    auto* m = sub->add_option("--m", o.m, "number of marked points (curve degree)");
    if (need_m) m->required();
    sub->add_option("--degrees", o.degrees, "comma-separated degrees, e.g. 2,2")->required();
    sub->add_flag("--json", o.json, "machine-readable output");
  };

  auto* check = app.add_subcommand("check", "hypothesis, dimension and Picard report");
  add_spec(check, true);
  auto* type = app.add_subcommand("type", "complete-intersection types of F_t and Y");
  add_spec(type, true);

  auto* count = app.add_subcommand("count", "enumerative counts");
  count->add_option("--kind", o.kind, "cubics | linking-conics | fiber-degree")
      ->required()
      ->check(CLI::IsMember({"cubics", "linking-conics", "fiber-degree"}));
  count->add_option("--degrees", o.degrees, "comma-separated degrees")->required();
  count->add_option("--m", o.m, "number of marked points (fiber-degree)");
  count->add_flag("--json", o.json, "machine-readable output");

  auto add_oracle = [&](CLI::App* sub, bool with_m) {
    sub->add_option("--q", o.q, "field size (prime)");
    sub->add_option("--n", o.n, "ambient projective dimension");
    if (with_m) sub->add_option("--m", o.m, "number of marked points");
    sub->add_option("--degrees", o.degrees, "comma-separated degrees");
    sub->add_option("--seed", o.seed, "instance seed");
    sub->add_option("--family", o.family, "random | split-quadric")
        ->check(CLI::IsMember({"random", "split-quadric"}));
    sub->add_flag("--json", o.json, "machine-readable output");
  };

  auto* verify = app.add_subcommand("verify", "exhaustive F_q oracle checks");
  verify->require_subcommand(1, 1);
  auto* v_lines = verify->add_subcommand("lines", "line-space system vs geometric line search");
  auto* v_combs = verify->add_subcommand("combs", "comb system vs geometric comb search");
  auto* v_reduce = verify->add_subcommand("reduce", "linear elimination preserves solution counts");
  for (auto* sub : {v_lines, v_combs, v_reduce}) {
    add_oracle(sub, sub != v_lines);
    sub->add_option("--trials", o.trials, "number of consecutive seeds")->check(CLI::Range(1u, 10000u));
    sub->add_option("--instance", o.instance_path, "verify a saved instance file instead of generating");
  }
  v_reduce->add_option("--system", o.system, "combs | lines")->check(CLI::IsMember({"combs", "lines"}));

  auto* instance = app.add_subcommand("instance", "generate a seeded instance file");
  add_oracle(instance, true);
  instance->add_option("--out", o.out_path, "write to a file instead of standard output");

  std::vector<const char*> argv{"mrc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? kExitPass : kExitUsage, out.str(), err.str()};
  }

  auto require_oracle_args = [&](CLI::App* sub, bool with_m) {
    if (!o.instance_path.empty()) return;
    for (const char* name : {"--q", "--n", "--degrees", "--seed"})
      if (sub->count(name) == 0) throw Error(ErrorKind::InvalidSpec, std::string(name) + " is required");
    if (with_m && sub->count("--m") == 0) throw Error(ErrorKind::InvalidSpec, "--m is required");
  };

  int code = kExitPass;
  try {
    if (*check) {
      code = cmd_check(o, out);
    } else if (*type) {
      code = cmd_type(o, out);
    } else if (*count) {
      code = cmd_count(o, out);
    } else if (*verify) {
      CLI::App* sub = *v_lines ? v_lines : *v_combs ? v_combs : v_reduce;
      const bool needs_m = sub == v_combs || (sub == v_reduce && o.system == "combs");
      require_oracle_args(sub, needs_m);
      code = cmd_verify(sub->get_name(), o, out);
    } else if (*instance) {
      require_oracle_args(instance, true);
      code = cmd_instance(o, out);
    }
  } catch (const TheoremNotApplicable& e) {
    err << e.what() << "\n";
    code = kExitFail;
  } catch (const Error& e) {
    err << e.what() << "\n";
    code = exit_code_for(e.kind());
    if (code == kExitUsage) err << "run 'mrc --help' for usage\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    code = kExitFail;
  }
  return {code, out.str(), err.str()};
}

}  // namespace mrc::cli
