#include "mrc/poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "mrc/errors.hpp"

namespace mrc {

namespace {

unsigned total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

void require_compatible(const MultiPoly& a, const MultiPoly& b, const char* op) {
  if (a.field() != b.field() || a.num_vars() != b.num_vars())
    throw Error(ErrorKind::IncompatibleOperands,
                std::string(op) + ": operands differ in modulus or variable count");
}

void append_monomials(std::size_t var, std::size_t num_vars, unsigned remaining, Exponent& current,
                      std::vector<Exponent>& out) {
  if (var + 1 == num_vars) {
    current[var] = static_cast<std::uint16_t>(remaining);
    out.push_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[var] = static_cast<std::uint16_t>(e);
    append_monomials(var + 1, num_vars, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

bool GradedLexOrder::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = total_degree(a);
  unsigned db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(PrimeField field, std::size_t num_vars, unsigned degree)
    : field_(field), num_vars_(num_vars), degree_(degree) {}

MultiPoly MultiPoly::variable(PrimeField field, std::size_t num_vars, std::size_t index) {
  if (index >= num_vars)
    throw Error(ErrorKind::IncompatibleOperands, "variable index out of range");
  MultiPoly p(field, num_vars, 1);
  Exponent e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, 1 % field.modulus());
  return p;
}

MultiPoly MultiPoly::constant(PrimeField field, std::size_t num_vars, std::int64_t value) {
  MultiPoly p(field, num_vars, 0);
  p.add_term(Exponent(num_vars, 0), field.reduce(value));
  return p;
}

MultiPoly MultiPoly::linear_form(PrimeField field, std::span<const std::int64_t> coefs) {
  MultiPoly p(field, coefs.size(), 1);
  Exponent e(coefs.size(), 0);
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    e[i] = 1;
    p.add_term(e, field.reduce(coefs[i]));
    e[i] = 0;
  }
  return p;
}

MultiPoly MultiPoly::from_terms(PrimeField field, std::size_t num_vars, unsigned degree,
                                std::span<const std::pair<Exponent, std::int64_t>> terms) {
  MultiPoly p(field, num_vars, degree);
  for (const auto& [exponent, coef] : terms) {
    if (exponent.size() != num_vars || total_degree(exponent) != degree)
      throw Error(ErrorKind::MalformedPolynomial, "term exponent does not match variable count/degree");
    p.add_term(exponent, field.reduce(coef));
  }
  return p;
}

MultiPoly MultiPoly::from_raw_terms(PrimeField field, std::size_t num_vars, unsigned degree,
                                    TermMap terms) {
  MultiPoly p(field, num_vars, degree);
  p.terms_ = std::move(terms);
  return p;
}

std::uint32_t MultiPoly::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

void MultiPoly::add_term(const Exponent& exponent, std::uint32_t coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coef);
  if (inserted) return;
  it->second = field_.add(it->second, coef);
  if (it->second == 0) terms_.erase(it);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = field_.neg(c);
  return r;
}

MultiPoly MultiPoly::scaled(std::uint32_t factor) const {
  factor %= field_.modulus();
  MultiPoly r(field_, num_vars_, degree_);
  if (factor == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, field_.mul(c, factor));
  return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  require_compatible(a, b, "add");
  // A zero summand may carry any nominal degree.
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  if (a.degree_ != b.degree_)
    throw Error(ErrorKind::IncompatibleOperands, "add: degrees differ");
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.field_ == b.field_ && a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ &&
         a.terms_ == b.terms_;
}

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) {
  require_compatible(a, b, "mul");
  const PrimeField field = a.field();
  MultiPoly r(field, a.num_vars(), a.degree() + b.degree());
  Exponent e(a.num_vars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      r.add_term(e, field.mul(ca, cb));
    }
  }
  return r;
}

MultiPoly poly_pow(const MultiPoly& base, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(base.field(), base.num_vars(), 1);
  for (unsigned i = 0; i < exponent; ++i) result = poly_mul(result, base);
  return result;
}

std::uint32_t poly_eval(const MultiPoly& f, std::span<const std::uint32_t> point) {
  if (point.size() != f.num_vars())
    throw Error(ErrorKind::IncompatibleOperands, "eval: point length differs from variable count");
  const PrimeField field = f.field();
  std::uint32_t sum = 0;
  for (const auto& [e, c] : f.terms()) {
    std::uint32_t term = c;
    for (std::size_t i = 0; i < e.size() && term != 0; ++i)
      if (e[i] != 0) term = field.mul(term, field.pow(point[i] % field.modulus(), e[i]));
    sum = field.add(sum, term);
  }
  return sum;
}

FieldElem poly_eval(const MultiPoly& f, std::span<const FieldElem> point) {
  std::vector<std::uint32_t> raw;
  raw.reserve(point.size());
  for (const FieldElem& x : point) {
    if (x.modulus() != f.modulus())
      throw Error(ErrorKind::IncompatibleOperands, "eval: point over a different field");
    raw.push_back(x.value());
  }
  return FieldElem(f.field(), poly_eval(f, std::span<const std::uint32_t>(raw)));
}

MultiPoly substitute_linear(const MultiPoly& f, std::span<const MultiPoly> images) {
  if (images.size() != f.num_vars())
    throw Error(ErrorKind::InvalidSubstitution, "substitute: need one image per variable");
  const PrimeField field = f.field();
  const std::size_t target_vars = images.empty() ? 0 : images.front().num_vars();
  std::vector<MultiPoly> linear;
  linear.reserve(images.size());
  for (const MultiPoly& image : images) {
    if (image.field() != field || image.num_vars() != target_vars)
      throw Error(ErrorKind::IncompatibleOperands, "substitute: images differ in field or variables");
    if (image.is_zero()) {
      linear.emplace_back(field, target_vars, 1);
      continue;
    }
    if (image.degree() != 1)
      throw Error(ErrorKind::InvalidSubstitution, "substitute: image is not a linear form");
    linear.push_back(image);
  }

  // powers[i][k] = linear[i]^k, filled on demand
  std::vector<std::vector<std::optional<MultiPoly>>> powers(images.size());
  auto power = [&](std::size_t i, unsigned k) -> const MultiPoly& {
    auto& row = powers[i];
    if (row.empty()) row.emplace_back(MultiPoly::constant(field, target_vars, 1));
    while (row.size() <= k) row.emplace_back(poly_mul(*row.back(), linear[i]));
    return *row[k];
  };

  MultiPoly result(field, target_vars, f.degree());
  for (const auto& [e, c] : f.terms()) {
    MultiPoly term = MultiPoly::constant(field, target_vars, c);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
      if (e[i] != 0) term = poly_mul(term, power(i, e[i]));
    if (!term.is_zero()) result = result + term;
  }
  return MultiPoly::from_raw_terms(field, target_vars, f.degree(), result.terms());
}

std::vector<Exponent> monomials(std::size_t num_vars, unsigned degree) {
  std::vector<Exponent> out;
  if (num_vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent current(num_vars, 0);
  append_monomials(0, num_vars, degree, current, out);
  return out;
}

MultiPoly random_homogeneous(std::size_t num_vars, unsigned degree, PrimeField field,
                             std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const std::uint64_t q = field.modulus();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / q * q;
  // Rejection sampling keeps the draw portable across standard libraries.
  auto draw = [&] {
    std::uint64_t x;
    do x = engine(); while (x >= limit);
    return static_cast<std::uint32_t>(x % q);
  };
  MultiPoly p(field, num_vars, degree);
  for (const Exponent& e : monomials(num_vars, degree)) p.add_term(e, draw());
  return p;
}

bool is_homogeneous_consistent(const MultiPoly& f) {
  for (const auto& [e, c] : f.terms()) {
    if (c == 0 || c >= f.modulus()) return false;
    if (e.size() != f.num_vars() || total_degree(e) != f.degree()) return false;
  }
  return true;
}

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (c != 1 || total_degree(e) == 0) {
      os << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << 'x' << i;
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

PolySystem::PolySystem(PrimeField field, std::size_t num_vars, std::vector<MultiPoly> polys)
    : field_(field), num_vars_(num_vars) {
  polys_.reserve(polys.size());
  for (auto& p : polys) add(std::move(p));
}

void PolySystem::add(MultiPoly f) {
  if (f.field() != field_ || f.num_vars() != num_vars_)
    throw Error(ErrorKind::IncompatibleOperands, "system member differs in field or variable count");
  polys_.push_back(std::move(f));
}

unsigned PolySystem::max_degree() const noexcept {
  unsigned d = 0;
  for (const auto& p : polys_) d = std::max(d, p.degree());
  return d;
}

}  // namespace mrc
