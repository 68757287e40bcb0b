#include "mrc/field.hpp"

#include <string>

#include "mrc/errors.hpp"

namespace mrc {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2)
    if (value % d == 0) return false;
  return true;
}

PrimeField PrimeField::make(std::uint64_t q) {
  if (q > kMaxModulus || !is_prime(q))
    throw Error(ErrorKind::InvalidField, "modulus " + std::to_string(q) + " is not a supported prime");
  return PrimeField(static_cast<std::uint32_t>(q));
}

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t exponent) const noexcept {
  std::uint32_t result = 1 % q_;
  while (exponent != 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw Error(ErrorKind::InternalError, "inverse of zero");
  return pow(a, q_ - 2);
}

namespace {
void require_same_field(const FieldElem& a, const FieldElem& b) {
  if (a.modulus() != b.modulus())
    throw Error(ErrorKind::IncompatibleOperands, "field elements over different moduli");
}
}  // namespace

FieldElem operator+(FieldElem a, FieldElem b) {
  require_same_field(a, b);
  return FieldElem(a.field_, a.field_.add(a.value_, b.value_), FieldElem::Raw{});
}

FieldElem operator-(FieldElem a, FieldElem b) {
  require_same_field(a, b);
  return FieldElem(a.field_, a.field_.sub(a.value_, b.value_), FieldElem::Raw{});
}

FieldElem operator*(FieldElem a, FieldElem b) {
  require_same_field(a, b);
  return FieldElem(a.field_, a.field_.mul(a.value_, b.value_), FieldElem::Raw{});
}

}  // namespace mrc
