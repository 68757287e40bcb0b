#include "mrc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mrc/errors.hpp"
#include "mrc/incidence.hpp"
#include "mrc/kernels.hpp"
#include "mrc/moduli.hpp"

namespace mrc {

namespace {

using Clock = std::chrono::steady_clock;
using kernels::PointBlock;

constexpr std::size_t kChunk = 4096;

struct CompiledSystem {
  PrimeField field;
  std::size_t num_vars;
  std::vector<kernels::CompiledPoly> polys;
  kernels::Isa isa;

  explicit CompiledSystem(const PolySystem& system)
      : field(system.field()), num_vars(system.num_vars()), isa(kernels::select_isa(system.modulus())) {
    for (const auto& f : system.polys())
      if (!f.is_zero()) polys.push_back(kernels::CompiledPoly::compile(f));
  }
};

// Candidate points in SoA form; ids[i] is the lane's offset in its chunk.
struct Candidates {
  PointBlock block;
  std::vector<std::uint32_t> ids;

  Candidates(std::size_t num_vars, std::size_t capacity) : block(num_vars, capacity) { ids.reserve(capacity); }

  std::size_t size() const noexcept { return ids.size(); }

  // Keeps lanes with keep[i] != 0, preserving order.
  void compact(const std::vector<std::uint8_t>& keep) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!keep[i]) continue;
      if (w != i) {
        for (std::size_t v = 0; v < block.num_vars(); ++v) block.at(v, w) = block.at(v, i);
        ids[w] = ids[i];
      }
      ++w;
    }
    ids.resize(w);
    block.resize(w);
  }

  ProjPoint point(std::size_t lane, PrimeField field) const {
    std::vector<std::uint32_t> coords(block.num_vars());
    for (std::size_t v = 0; v < coords.size(); ++v) coords[v] = block.at(v, lane);
    return ProjPoint::normalized(field, std::move(coords));
  }
};

struct Scratch {
  std::vector<std::uint32_t> values;
  std::vector<std::uint8_t> keep;
  PointBlock params;

  Scratch(std::size_t num_vars, std::size_t capacity)
      : values(capacity), keep(capacity), params(num_vars, capacity) {}
};

void fill_from_space(const ProjectiveSpace& space, std::uint64_t start, std::size_t count, Candidates& cand) {
  std::vector<std::uint32_t> coords(static_cast<std::size_t>(space.dim() + 1));
  space.unrank(start, coords.data());
  cand.ids.clear();
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) space.advance(coords.data());
    for (std::size_t v = 0; v < coords.size(); ++v) cand.block.at(v, i) = coords[v];
    cand.ids.push_back(static_cast<std::uint32_t>(i));
  }
  cand.block.resize(count);
}

// Drops candidates at which some form is nonzero.
void filter_zeros(const CompiledSystem& sys, Candidates& cand, Scratch& scratch) {
  for (const auto& f : sys.polys) {
    if (cand.size() == 0) return;
    kernels::eval_block(sys.isa, f, cand.block, scratch.values);
    for (std::size_t i = 0; i < cand.size(); ++i) scratch.keep[i] = scratch.values[i] == 0;
    cand.compact(scratch.keep);
  }
}

// Drops candidates r for which the line through p and r leaves X. The
// candidate itself is the (0,1) point of the line, p the (1,0) point.
void filter_lines_through(const CompiledSystem& sys, const PolySystem& forms, const ProjPoint& p,
                          Candidates& cand, Scratch& scratch) {
  for (const auto& f : forms.polys())
    if (poly_eval(f, std::span<const std::uint32_t>(p.coords())) != 0) {
      cand.ids.clear();
      cand.block.resize(0);
      return;
    }
  filter_zeros(sys, cand, scratch);
  const PrimeField field = sys.field;
  for (std::uint32_t t = 1; t < field.modulus(); ++t) {
    if (cand.size() == 0) return;
    const std::size_t n = cand.size();
    scratch.params.resize(n);
    for (std::size_t v = 0; v < sys.num_vars; ++v) {
      const std::uint32_t pv = p[v];
      const std::uint32_t* src = cand.block.column(v);
      std::uint32_t* dst = scratch.params.column(v);
      for (std::size_t i = 0; i < n; ++i) dst[i] = field.add(pv, field.mul(t, src[i]));
    }
    std::fill(scratch.keep.begin(), scratch.keep.begin() + static_cast<std::ptrdiff_t>(n), 1);
    for (const auto& f : sys.polys) {
      kernels::eval_block(sys.isa, f, scratch.params, scratch.values);
      for (std::size_t i = 0; i < n; ++i) scratch.keep[i] &= scratch.values[i] == 0;
    }
    cand.compact(scratch.keep);
  }
}

void drop_point(Candidates& cand, const ProjPoint& p, Scratch& scratch) {
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool same = true;
    for (std::size_t v = 0; v < p.size() && same; ++v) same = cand.block.at(v, i) == p[v];
    scratch.keep[i] = !same;
  }
  cand.compact(scratch.keep);
}

// Runs body(start, count, out) over fixed chunks of [0, total) on up to
// oracle_thread_count() threads and concatenates outputs in chunk order.
template <class Body>
std::vector<ProjPoint> scan_chunks(std::uint64_t total, Body body) {
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<ProjPoint>> results(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::uint64_t c = next++; c < chunks; c = next++) {
        const std::uint64_t start = c * kChunk;
        body(start, static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, total - start)), results[c]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };

  const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(oracle_thread_count(), chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ProjPoint> out;
  for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

void require_field_size(const PolySystem& forms) {
  if (forms.modulus() < forms.max_degree())
    throw Error(ErrorKind::FieldTooSmall, "q=" + std::to_string(forms.modulus()) + " is below the maximal degree " +
                                              std::to_string(forms.max_degree()));
}

void require_point(const PolySystem& forms, const ProjPoint& p) {
  if (p.size() != forms.num_vars() || p.field() != forms.field())
    throw Error(ErrorKind::IncompatibleOperands, "point " + p.to_string() + " does not match the system");
}

bool on_variety(const PolySystem& forms, const ProjPoint& p) {
  for (const auto& f : forms.polys())
    if (poly_eval(f, std::span<const std::uint32_t>(p.coords())) != 0) return false;
  return true;
}

void add_mismatches(VerificationReport& report, const std::vector<ProjPoint>& algebraic,
                    const std::vector<ProjPoint>& geometric) {
  std::vector<ProjPoint> only_alg, only_geo;
  std::set_difference(algebraic.begin(), algebraic.end(), geometric.begin(), geometric.end(),
                      std::back_inserter(only_alg));
  std::set_difference(geometric.begin(), geometric.end(), algebraic.begin(), algebraic.end(),
                      std::back_inserter(only_geo));
  for (const auto& p : only_alg) {
    if (report.mismatches.size() >= VerificationReport::kMaxMismatches) break;
    report.mismatches.push_back({p, "algebraic_only"});
  }
  for (const auto& p : only_geo) {
    if (report.mismatches.size() >= VerificationReport::kMaxMismatches) break;
    report.mismatches.push_back({p, "geometric_only"});
  }
  report.pass = only_alg.empty() && only_geo.empty();
}

nlohmann::ordered_json degrees_json(const DegreeMultiset& degrees) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (auto d : degrees) out.push_back(d);
  return out;
}

}  // namespace

unsigned oracle_thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MRC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) return static_cast<unsigned>(std::min<long>(cap, 1024));
  }
  return hw;
}

std::vector<ProjPoint> solve_by_enumeration(const PolySystem& system) {
  const int n = static_cast<int>(system.num_vars()) - 1;
  check_enumeration_capacity(n, system.modulus());
  const ProjectiveSpace space(n, system.field());
  const CompiledSystem sys(system);
  return scan_chunks(space.size(), [&](std::uint64_t start, std::size_t count, std::vector<ProjPoint>& out) {
    Candidates cand(system.num_vars(), count);
    Scratch scratch(system.num_vars(), count);
    fill_from_space(space, start, count, cand);
    filter_zeros(sys, cand, scratch);
    for (std::size_t i = 0; i < cand.size(); ++i) out.push_back(cand.point(i, system.field()));
  });
}

std::vector<ProjPoint> variety_points(const PolySystem& forms) { return solve_by_enumeration(forms); }

bool line_contained(const PolySystem& forms, const ProjPoint& p, const ProjPoint& r) {
  require_point(forms, p);
  require_point(forms, r);
  if (p == r) throw Error(ErrorKind::DegenerateLine, "line through " + p.to_string() + " and itself");
  require_field_size(forms);
  const PrimeField field = forms.field();
  std::vector<std::uint32_t> x(p.size());
  auto vanishes_at = [&](std::uint32_t s, std::uint32_t t) {
    for (std::size_t v = 0; v < x.size(); ++v) x[v] = field.add(field.mul(s, p[v]), field.mul(t, r[v]));
    for (const auto& f : forms.polys())
      if (poly_eval(f, std::span<const std::uint32_t>(x)) != 0) return false;
    return true;
  };
  if (!vanishes_at(0, 1)) return false;
  for (std::uint32_t t = 0; t < field.modulus(); ++t)
    if (!vanishes_at(1, t)) return false;
  return true;
}

LineSearch lines_through_point(const PolySystem& forms, const ProjPoint& p) {
  require_point(forms, p);
  if (!on_variety(forms, p)) throw Error(ErrorKind::PointNotOnVariety, "point " + p.to_string() + " is not on X");
  require_field_size(forms);
  if (forms.num_vars() < 2) throw Error(ErrorKind::DegenerateConfiguration, "no lines in P^0");

  const DirectionFrame frame(p);
  const int dir_dim = static_cast<int>(frame.direction_dim()) - 1;
  check_enumeration_capacity(dir_dim, forms.modulus());
  const ProjectiveSpace directions(dir_dim, forms.field());
  const CompiledSystem sys(forms);
  const std::size_t nv = forms.num_vars();
  const std::size_t pivot = frame.pivot();

  LineSearch search;
  search.directions =
      scan_chunks(directions.size(), [&](std::uint64_t start, std::size_t count, std::vector<ProjPoint>& out) {
        Candidates dirs(nv - 1, count);
        fill_from_space(directions, start, count, dirs);
        Candidates cand(nv, count);
        Scratch scratch(nv, count);
        for (std::size_t v = 0, j = 0; v < nv; ++v) {
          std::uint32_t* dst = cand.block.column(v);
          if (v == pivot) {
            std::fill(dst, dst + count, 0u);
            continue;
          }
          std::copy(dirs.block.column(j), dirs.block.column(j) + count, dst);
          ++j;
        }
        cand.ids = dirs.ids;
        cand.block.resize(count);
        filter_lines_through(sys, forms, p, cand, scratch);
        for (auto id : cand.ids) out.push_back(dirs.point(id, forms.field()));
      });
  return search;
}

std::vector<ProjPoint> geometric_combs(const PolySystem& forms, std::span<const ProjPoint> points) {
  for (const auto& p : points) {
    require_point(forms, p);
    if (!on_variety(forms, p)) throw Error(ErrorKind::PointNotOnVariety, "point " + p.to_string() + " is not on X");
  }
  require_field_size(forms);
  const int n = static_cast<int>(forms.num_vars()) - 1;
  check_enumeration_capacity(n, forms.modulus());
  const ProjectiveSpace space(n, forms.field());
  const CompiledSystem sys(forms);
  return scan_chunks(space.size(), [&](std::uint64_t start, std::size_t count, std::vector<ProjPoint>& out) {
    Candidates cand(forms.num_vars(), count);
    Scratch scratch(forms.num_vars(), count);
    fill_from_space(space, start, count, cand);
    for (const auto& p : points) drop_point(cand, p, scratch);
    for (const auto& p : points) filter_lines_through(sys, forms, p, cand, scratch);
    for (std::size_t i = 0; i < cand.size(); ++i) out.push_back(cand.point(i, forms.field()));
  });
}

std::vector<ProjPoint> degenerate_comb_branch(const PolySystem& forms, std::span<const ProjPoint> points) {
  std::vector<ProjPoint> out;
  for (std::size_t j = 0; j < points.size(); ++j) {
    bool all = true;
    for (std::size_t k = 0; k < points.size() && all; ++k)
      if (k != j) all = line_contained(forms, points[k], points[j]);
    if (all) out.push_back(points[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

VerificationReport verify_combs(const PolySystem& forms, std::span<const ProjPoint> points,
                                nlohmann::ordered_json instance) {
  const auto start = Clock::now();
  VerificationReport report;
  report.instance = std::move(instance);

  const PolySystem system = comb_system(forms, points);
  const auto algebraic = solve_by_enumeration(system);
  const auto geometric = geometric_combs(forms, points);
  const auto degenerate = degenerate_comb_branch(forms, points);
  std::vector<ProjPoint> expected;
  std::set_union(geometric.begin(), geometric.end(), degenerate.begin(), degenerate.end(),
                 std::back_inserter(expected));

  report.algebraic_count = algebraic.size();
  report.geometric_count = geometric.size();
  report.degenerate_branch_count = degenerate.size();
  add_mismatches(report, algebraic, expected);
  report.details["system_type"] = degrees_json(system_type(system));
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return report;
}

VerificationReport verify_lines(const PolySystem& forms, const ProjPoint& p, nlohmann::ordered_json instance) {
  const auto start = Clock::now();
  VerificationReport report;
  report.instance = std::move(instance);

  const PolySystem system = line_system(forms, p);
  const auto algebraic = solve_by_enumeration(system);
  const auto geometric = lines_through_point(forms, p).directions;
  report.algebraic_count = algebraic.size();
  report.geometric_count = geometric.size();
  add_mismatches(report, algebraic, geometric);

  const Elimination elim = eliminate_linear(system);
  const bool full_rank = elim.eliminated_count == forms.size();
  std::vector<unsigned> expected;
  for (const auto& f : forms.polys())
    for (unsigned k = 2; k <= f.degree(); ++k) expected.push_back(k);
  const DegreeMultiset reduced_type = system_type(elim.reduced);
  report.details["system_type"] = degrees_json(system_type(system));
  report.details["linear_rank"] = elim.eliminated_count;
  report.details["reduced_ambient_dim"] = static_cast<std::int64_t>(elim.new_num_vars) - 1;
  report.details["reduced_type"] = degrees_json(reduced_type);
  report.details["reduced_type_checked"] = full_rank;
  if (full_rank && reduced_type != as_multiset(expected)) report.pass = false;

  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return report;
}

VerificationReport verify_reduce(const PolySystem& system, nlohmann::ordered_json instance) {
  const auto start = Clock::now();
  VerificationReport report;
  report.instance = std::move(instance);

  const Elimination elim = eliminate_linear(system);
  const auto input_solutions = solve_by_enumeration(system);
  const auto reduced_solutions = solve_by_enumeration(elim.reduced);
  report.geometric_count = input_solutions.size();
  report.algebraic_count = reduced_solutions.size();

  DegreeMultiset expected = system_type(system);
  std::erase(expected, 1u);
  const DegreeMultiset reduced_type = system_type(elim.reduced);
  report.pass = report.geometric_count == report.algebraic_count && reduced_type == expected;

  report.details["input_type"] = degrees_json(system_type(system));
  report.details["reduced_type"] = degrees_json(reduced_type);
  report.details["input_num_vars"] = system.num_vars();
  report.details["reduced_num_vars"] = elim.new_num_vars;
  report.details["eliminated_count"] = elim.eliminated_count;
  report.details["linear_members"] = elim.linear_members;
  report.details["vanished_members"] = elim.vanished.size();
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return report;
}

}  // namespace mrc
