#include "mrc/incidence.hpp"

#include <algorithm>
#include <set>

#include "mrc/errors.hpp"

namespace mrc {

namespace {

void require_point_shape(const PolySystem& forms, const ProjPoint& p) {
  if (p.size() != forms.num_vars() || p.field() != forms.field())
    throw Error(ErrorKind::IncompatibleOperands, "point " + p.to_string() + " does not match the system");
}

void require_on_variety(const PolySystem& forms, const ProjPoint& p) {
  require_point_shape(forms, p);
  for (const auto& f : forms.polys())
    if (poly_eval(f, std::span<const std::uint32_t>(p.coords())) != 0)
      throw Error(ErrorKind::PointNotOnVariety, "point " + p.to_string() + " is not on X");
}

// Binomial coefficients mod q, rows 0..n.
std::vector<std::vector<std::uint32_t>> binomial_table(unsigned n, PrimeField field) {
  std::vector<std::vector<std::uint32_t>> table(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    table[i].assign(i + 1, 1 % field.modulus());
    for (unsigned j = 1; j < i; ++j) table[i][j] = field.add(table[i - 1][j - 1], table[i - 1][j]);
  }
  return table;
}

}  // namespace

LineExpansion bihomog_expand(const MultiPoly& form, const ProjPoint& p) {
  if (form.is_zero()) throw Error(ErrorKind::InvalidForm, "cannot expand the zero form");
  if (form.degree() < 1) throw Error(ErrorKind::InvalidForm, "cannot expand a constant form");
  if (p.size() != form.num_vars() || p.field() != form.field())
    throw Error(ErrorKind::IncompatibleOperands, "base point does not match the form");

  const PrimeField field = form.field();
  const unsigned d = form.degree();
  const std::size_t nv = form.num_vars();
  const auto binom = binomial_table(d, field);

  std::vector<MultiPoly> h;
  h.reserve(d + 1);
  for (unsigned k = 0; k <= d; ++k) h.emplace_back(field, nv, k);

  // Each monomial c * prod x_i^{e_i} contributes, for every a <= e,
  // c * prod C(e_i, a_i) p_i^{e_i - a_i} * Q^a to H_{|a|}.
  Exponent a(nv);
  for (const auto& [e, c] : form.terms()) {
    std::fill(a.begin(), a.end(), 0);
    while (true) {
      std::uint32_t coef = c;
      for (std::size_t i = 0; i < nv && coef != 0; ++i) {
        if (e[i] == 0) continue;
        coef = field.mul(coef, binom[e[i]][a[i]]);
        coef = field.mul(coef, field.pow(p[i], e[i] - a[i]));
      }
      if (coef != 0) {
        unsigned k = 0;
        for (auto x : a) k += x;
        h[k].add_term(a, coef);
      }
      // Odometer over 0 <= a <= e.
      std::size_t i = 0;
      while (i < nv && a[i] == e[i]) a[i++] = 0;
      if (i == nv) break;
      ++a[i];
    }
  }

  const std::uint32_t h0 = h[0].coefficient(Exponent(nv, 0));
  h.erase(h.begin());
  return LineExpansion{p, FieldElem(field, h0), std::move(h)};
}

DirectionFrame::DirectionFrame(ProjPoint base) : base_(std::move(base)), pivot_(base_.leading_index()) {
  for (std::size_t i = 0; i < base_.size(); ++i)
    if (i != pivot_) direction_coords_.push_back(i);
}

ProjPoint DirectionFrame::direction_to_point(const ProjPoint& direction) const {
  if (direction.size() != direction_coords_.size())
    throw Error(ErrorKind::IncompatibleOperands, "direction has the wrong length");
  std::vector<std::uint32_t> x(base_.size(), 0);
  for (std::size_t j = 0; j < direction_coords_.size(); ++j) x[direction_coords_[j]] = direction[j];
  return ProjPoint::normalized(base_.field(), std::move(x));
}

std::vector<MultiPoly> DirectionFrame::direction_images() const {
  const PrimeField field = base_.field();
  const std::size_t n = direction_coords_.size();
  std::vector<MultiPoly> images(base_.size(), MultiPoly(field, n, 1));
  for (std::size_t j = 0; j < n; ++j) images[direction_coords_[j]] = MultiPoly::variable(field, n, j);
  return images;
}

PolySystem line_system(const PolySystem& forms, const ProjPoint& p) {
  require_on_variety(forms, p);
  const DirectionFrame frame(p);
  const auto images = frame.direction_images();
  PolySystem out(forms.field(), frame.direction_dim());
  for (const auto& f : forms.polys()) {
    const LineExpansion exp = bihomog_expand(f, p);
    for (unsigned k = 1; k <= exp.degree(); ++k) out.add(substitute_linear(exp.h(k), images));
  }
  return out;
}

PolySystem comb_system(const PolySystem& forms, std::span<const ProjPoint> points) {
  if (points.empty()) throw Error(ErrorKind::DegenerateConfiguration, "comb system needs at least one point");
  std::set<ProjPoint> seen;
  for (const auto& p : points) {
    require_on_variety(forms, p);
    if (!seen.insert(p).second)
      throw Error(ErrorKind::DegenerateConfiguration, "duplicate marked point " + p.to_string());
  }

  PolySystem out(forms.field(), forms.num_vars());
  for (const auto& f : forms.polys()) {
    std::vector<LineExpansion> expansions;
    expansions.reserve(points.size());
    for (const auto& p : points) {
      expansions.push_back(bihomog_expand(f, p));
      if (!(expansions.back().h(f.degree()) == f))
        throw Error(ErrorKind::InternalError, "top expansion coefficient differs from the form at " + p.to_string());
    }
    for (const auto& exp : expansions)
      for (unsigned k = 1; k < f.degree(); ++k) out.add(exp.h(k));
    out.add(f);
  }
  return out;
}

Elimination eliminate_linear(const PolySystem& system) {
  const PrimeField field = system.field();
  const std::size_t nv = system.num_vars();

  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& f : system.polys()) {
    if (f.degree() != 1) continue;
    std::vector<std::uint32_t> row(nv, 0);
    for (const auto& [e, c] : f.terms())
      row[static_cast<std::size_t>(std::find(e.begin(), e.end(), 1) - e.begin())] = c;
    rows.push_back(std::move(row));
  }
  const std::size_t linear_members = rows.size();

  // Reduced row echelon form over F_q.
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nv && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const std::uint32_t inv = field.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = field.mul(x, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint32_t factor = rows[r][col];
      for (std::size_t k = 0; k < nv; ++k) rows[r][k] = field.sub(rows[r][k], field.mul(factor, rows[rank][k]));
    }
    pivots.push_back(col);
    ++rank;
  }

  Elimination out{PolySystem(field, nv - rank), nv - rank, rank, linear_members, {}, pivots, {}};
  std::vector<std::size_t> new_index(nv, nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (std::find(pivots.begin(), pivots.end(), v) != pivots.end()) continue;
    new_index[v] = out.free_vars.size();
    out.free_vars.push_back(v);
  }

  std::vector<MultiPoly> images(nv, MultiPoly(field, out.new_num_vars, 1));
  for (std::size_t v : out.free_vars) images[v] = MultiPoly::variable(field, out.new_num_vars, new_index[v]);
  for (std::size_t r = 0; r < rank; ++r) {
    // x_pivot = -sum_{free f} row[f] x_f
    MultiPoly image(field, out.new_num_vars, 1);
    Exponent e(out.new_num_vars, 0);
    for (std::size_t v : out.free_vars) {
      if (rows[r][v] == 0) continue;
      e[new_index[v]] = 1;
      image.add_term(e, field.neg(rows[r][v]));
      e[new_index[v]] = 0;
    }
    images[pivots[r]] = std::move(image);
  }

  for (const auto& f : system.polys()) {
    if (f.degree() == 1) continue;
    MultiPoly g = substitute_linear(f, images);
    if (g.is_zero() && !f.is_zero()) out.vanished.push_back(out.reduced.size());
    out.reduced.add(std::move(g));
  }
  return out;
}

DegreeMultiset system_type(const PolySystem& system) {
  std::vector<unsigned> degrees;
  degrees.reserve(system.size());
  for (const auto& f : system.polys()) degrees.push_back(f.degree());
  return as_multiset(std::move(degrees));
}

}  // namespace mrc
