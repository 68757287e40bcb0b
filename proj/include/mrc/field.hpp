#pragma once

#include <compare>
#include <cstdint>

namespace mrc {

bool is_prime(std::uint64_t value);

// Arithmetic in Z/qZ for a prime q < 2^31. Residues are plain uint32_t in
// [0, q); products are formed in 64 bits.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  // Throws Error(InvalidField) unless q is a prime not exceeding kMaxModulus.
  static PrimeField make(std::uint64_t q);

  std::uint32_t modulus() const noexcept { return q_; }

  std::uint32_t reduce(std::int64_t value) const noexcept {
    std::int64_t r = value % static_cast<std::int64_t>(q_);
    return static_cast<std::uint32_t>(r < 0 ? r + q_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + q_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % q_);
  }
  std::uint32_t pow(std::uint32_t base, std::uint64_t exponent) const noexcept;
  // Inverse of a nonzero residue.
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(PrimeField, PrimeField) = default;

 private:
  explicit PrimeField(std::uint32_t q) : q_(q) {}
  std::uint32_t q_;
};

class FieldElem {
 public:
  FieldElem(PrimeField field, std::int64_t value) : value_(field.reduce(value)), field_(field) {}

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  PrimeField field() const noexcept { return field_; }

  friend FieldElem operator+(FieldElem a, FieldElem b);
  friend FieldElem operator-(FieldElem a, FieldElem b);
  friend FieldElem operator*(FieldElem a, FieldElem b);
  FieldElem operator-() const { return FieldElem(field_, field_.neg(value_), Raw{}); }
  FieldElem pow(std::uint64_t exponent) const {
    return FieldElem(field_, field_.pow(value_, exponent), Raw{});
  }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.value_ == b.value_ && a.field_ == b.field_;
  }

 private:
  struct Raw {};
  FieldElem(PrimeField field, std::uint32_t reduced, Raw) : value_(reduced), field_(field) {}

  std::uint32_t value_;
  PrimeField field_;
};

}  // namespace mrc
