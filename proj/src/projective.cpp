#include "mrc/projective.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "mrc/errors.hpp"

namespace mrc {

ProjPoint ProjPoint::normalized(PrimeField field, std::vector<std::uint32_t> coords) {
  auto lead = std::find_if(coords.begin(), coords.end(), [&](std::uint32_t x) { return x % field.modulus() != 0; });
  if (lead == coords.end())
    throw Error(ErrorKind::DegenerateConfiguration, "the zero vector is not a projective point");
  const std::uint32_t scale = field.inv(*lead % field.modulus());
  for (auto& x : coords) x = field.mul(x % field.modulus(), scale);
  return ProjPoint(field, std::move(coords));
}

ProjPoint ProjPoint::from_ints(PrimeField field, std::initializer_list<std::int64_t> coords) {
  return from_ints(field, std::vector<std::int64_t>(coords));
}

ProjPoint ProjPoint::from_ints(PrimeField field, const std::vector<std::int64_t>& coords) {
  std::vector<std::uint32_t> reduced;
  reduced.reserve(coords.size());
  for (auto c : coords) reduced.push_back(field.reduce(c));
  return normalized(field, std::move(reduced));
}

std::vector<FieldElem> ProjPoint::elems() const {
  std::vector<FieldElem> out;
  out.reserve(coords_.size());
  for (auto c : coords_) out.emplace_back(field_, c);
  return out;
}

std::size_t ProjPoint::leading_index() const noexcept {
  return static_cast<std::size_t>(std::find_if(coords_.begin(), coords_.end(), [](auto x) { return x != 0; }) -
                                  coords_.begin());
}

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
  if (auto c = a.modulus() <=> b.modulus(); c != 0) return c;
  return a.coords_ <=> b.coords_;
}

ProjectiveSpace::ProjectiveSpace(int n, PrimeField field) : n_(n), field_(field), size_(0) {
  if (n < -1) throw Error(ErrorKind::InvalidSpec, "projective dimension below -1");
  const std::uint64_t q = field.modulus();
  // Blocks in order i = n, ..., 0; block i holds q^{n-i} points.
  block_start_.assign(static_cast<std::size_t>(n + 1), 0);
  std::uint64_t block = 1;
  for (int i = n; i >= 0; --i) {
    block_start_[static_cast<std::size_t>(i)] = size_;
    if (size_ > std::numeric_limits<std::uint64_t>::max() - block)
      throw Error(ErrorKind::CapacityExceeded, "projective space too large to index");
    size_ += block;
    if (i > 0) {
      if (block > std::numeric_limits<std::uint64_t>::max() / q)
        throw Error(ErrorKind::CapacityExceeded, "projective space too large to index");
      block *= q;
    }
  }
}

void ProjectiveSpace::unrank(std::uint64_t rank, std::uint32_t* coords) const {
  if (rank >= size_) throw Error(ErrorKind::InternalError, "projective rank out of range");
  const std::uint32_t q = field_.modulus();
  // Leading index: the block with the largest start not exceeding rank.
  std::size_t lead = 0;
  for (int i = 0; i <= n_; ++i) {
    if (block_start_[static_cast<std::size_t>(i)] <= rank) {
      lead = static_cast<std::size_t>(i);
      break;
    }
  }
  std::uint64_t offset = rank - block_start_[lead];
  const auto len = static_cast<std::size_t>(n_ + 1);
  for (std::size_t i = 0; i < lead; ++i) coords[i] = 0;
  coords[lead] = 1;
  for (std::size_t i = len; i-- > lead + 1;) {
    coords[i] = static_cast<std::uint32_t>(offset % q);
    offset /= q;
  }
}

bool ProjectiveSpace::advance(std::uint32_t* coords) const {
  const std::uint32_t q = field_.modulus();
  const auto len = static_cast<std::size_t>(n_ + 1);
  std::size_t lead = 0;
  while (coords[lead] == 0) ++lead;
  for (std::size_t i = len; i-- > lead + 1;) {
    if (++coords[i] < q) return true;
    coords[i] = 0;
  }
  // Tail wrapped: move to the block whose leading coordinate is one left.
  if (lead == 0) return false;
  coords[lead] = 0;
  coords[lead - 1] = 1;
  return true;
}

ProjPoint ProjectiveSpace::at(std::uint64_t rank) const {
  std::vector<std::uint32_t> coords(static_cast<std::size_t>(n_ + 1));
  unrank(rank, coords.data());
  return ProjPoint::normalized(field_, std::move(coords));
}

ProjectiveSpace::Iterator::Iterator(const ProjectiveSpace* space, std::uint64_t rank)
    : space_(space), rank_(rank), coords_(static_cast<std::size_t>(space->dim() + 1)) {
  if (rank_ < space_->size()) space_->unrank(rank_, coords_.data());
}

ProjPoint ProjectiveSpace::Iterator::operator*() const {
  return ProjPoint::normalized(space_->field(), coords_);
}

ProjectiveSpace::Iterator& ProjectiveSpace::Iterator::operator++() {
  ++rank_;
  if (rank_ < space_->size()) space_->advance(coords_.data());
  return *this;
}

ProjectiveSpace proj_points(int n, std::uint64_t q) {
  if (n < 0) throw Error(ErrorKind::InvalidSpec, "projective dimension must be non-negative");
  return ProjectiveSpace(n, PrimeField::make(q));
}

void check_enumeration_capacity(int n, std::uint32_t q) {
  std::uint64_t work = 1;
  for (int i = 0; i < n; ++i) {
    work *= q;
    if (work > kEnumerationBudget)
      throw Error(ErrorKind::CapacityExceeded,
                  "enumeration of P^" + std::to_string(n) + "(F_" + std::to_string(q) +
                      ") exceeds the q^n <= 10^7 budget");
  }
}

}  // namespace mrc
