#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrc/field.hpp"

namespace mrc {

using Exponent = std::vector<std::uint16_t>;

// Graded lexicographic order with x0 > x1 > ... > x_{n-1}: higher total
// degree first, then lexicographically larger exponent first. This is the
// order of the canonical serialization.
struct GradedLexOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Sparse homogeneous polynomial over a prime field. Every stored
// coefficient is a nonzero residue and every exponent sums to degree().
// The zero polynomial keeps a nominal degree; test for zero with is_zero().
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, std::uint32_t, GradedLexOrder>;

  // The zero polynomial of the given nominal degree.
  MultiPoly(PrimeField field, std::size_t num_vars, unsigned degree);

  static MultiPoly variable(PrimeField field, std::size_t num_vars, std::size_t index);
  static MultiPoly constant(PrimeField field, std::size_t num_vars, std::int64_t value);
  // sum_i coefs[i] * x_i
  static MultiPoly linear_form(PrimeField field, std::span<const std::int64_t> coefs);
  // Accumulates the given terms; throws MalformedPolynomial on an exponent of
  // the wrong length or total degree.
  static MultiPoly from_terms(PrimeField field, std::size_t num_vars, unsigned degree,
                              std::span<const std::pair<Exponent, std::int64_t>> terms);
  // Stores terms verbatim without any validation. Only deserialization and
  // consistency tests should need this; check is_homogeneous_consistent().
  static MultiPoly from_raw_terms(PrimeField field, std::size_t num_vars, unsigned degree,
                                  TermMap terms);

  PrimeField field() const noexcept { return field_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree() const noexcept { return degree_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::uint32_t coefficient(const Exponent& exponent) const;

  // Adds coef * x^exponent; prunes a resulting zero coefficient.
  void add_term(const Exponent& exponent, std::uint32_t coef);

  MultiPoly operator-() const;
  MultiPoly scaled(std::uint32_t factor) const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  PrimeField field_;
  std::size_t num_vars_;
  unsigned degree_;
  TermMap terms_;
};

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);
inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return poly_mul(a, b); }
MultiPoly poly_pow(const MultiPoly& base, unsigned exponent);

FieldElem poly_eval(const MultiPoly& f, std::span<const FieldElem> point);
// Evaluation on raw residues (already reduced mod q).
std::uint32_t poly_eval(const MultiPoly& f, std::span<const std::uint32_t> point);

// Composes f with one linear form per variable of f. All images share a
// variable count and the field of f; a zero image stands for the zero form.
MultiPoly substitute_linear(const MultiPoly& f, std::span<const MultiPoly> images);

// Coefficients drawn uniformly from F_q for every monomial, in graded-lex
// order, from a generator seeded with `seed` only.
MultiPoly random_homogeneous(std::size_t num_vars, unsigned degree, PrimeField field,
                             std::uint64_t seed);

bool is_homogeneous_consistent(const MultiPoly& f);

// All exponents of the given total degree, in graded-lex order.
std::vector<Exponent> monomials(std::size_t num_vars, unsigned degree);

std::string to_string(const MultiPoly& f);

// A list of forms over one field and one variable set.
class PolySystem {
 public:
  PolySystem(PrimeField field, std::size_t num_vars) : field_(field), num_vars_(num_vars) {}
  PolySystem(PrimeField field, std::size_t num_vars, std::vector<MultiPoly> polys);

  PrimeField field() const noexcept { return field_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<MultiPoly>& polys() const noexcept { return polys_; }
  std::size_t size() const noexcept { return polys_.size(); }
  bool empty() const noexcept { return polys_.empty(); }
  const MultiPoly& operator[](std::size_t i) const { return polys_[i]; }
  unsigned max_degree() const noexcept;

  // Throws IncompatibleOperands if f does not share field and variables.
  void add(MultiPoly f);

  friend bool operator==(const PolySystem&, const PolySystem&) = default;

 private:
  PrimeField field_;
  std::size_t num_vars_;
  std::vector<MultiPoly> polys_;
};

}  // namespace mrc
