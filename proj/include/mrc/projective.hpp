#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "mrc/field.hpp"

namespace mrc {

// A point of P^n(F_q), stored with its first nonzero coordinate equal to 1
// so that equal points have identical representations.
class ProjPoint {
 public:
  // Throws DegenerateConfiguration for the zero vector.
  static ProjPoint normalized(PrimeField field, std::vector<std::uint32_t> coords);
  static ProjPoint from_ints(PrimeField field, std::initializer_list<std::int64_t> coords);
  static ProjPoint from_ints(PrimeField field, const std::vector<std::int64_t>& coords);

  PrimeField field() const noexcept { return field_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  std::size_t size() const noexcept { return coords_.size(); }
  int dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  const std::vector<std::uint32_t>& coords() const noexcept { return coords_; }
  std::uint32_t operator[](std::size_t i) const { return coords_[i]; }
  std::vector<FieldElem> elems() const;
  // Index of the leading (first nonzero) coordinate, which equals 1.
  std::size_t leading_index() const noexcept;

  std::string to_string() const;

  // Lexicographic on normalized coordinates; this is also the enumeration
  // order of ProjectiveSpace.
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.field_ == b.field_ && a.coords_ == b.coords_;
  }

 private:
  ProjPoint(PrimeField field, std::vector<std::uint32_t> coords)
      : field_(field), coords_(std::move(coords)) {}

  PrimeField field_;
  std::vector<std::uint32_t> coords_;
};

// P^n(F_q) with a fixed rank <-> point bijection. Points are ordered
// lexicographically by normalized coordinates, i.e. (0,...,0,1) first and
// (1,q-1,...,q-1) last. n = -1 is the empty space.
class ProjectiveSpace {
 public:
  ProjectiveSpace(int n, PrimeField field);

  int dim() const noexcept { return n_; }
  PrimeField field() const noexcept { return field_; }
  // (q^{n+1} - 1) / (q - 1)
  std::uint64_t size() const noexcept { return size_; }

  ProjPoint at(std::uint64_t rank) const;
  // Writes the normalized coordinates of the point with the given rank.
  void unrank(std::uint64_t rank, std::uint32_t* coords) const;
  // Advances normalized coordinates to the next point in order; returns
  // false after the last point.
  bool advance(std::uint32_t* coords) const;

  class Iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ProjPoint;
    using difference_type = std::ptrdiff_t;

    Iterator(const ProjectiveSpace* space, std::uint64_t rank);
    ProjPoint operator*() const;
    Iterator& operator++();
    Iterator operator++(int) {
      Iterator old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(const Iterator& a, const Iterator& b) { return a.rank_ == b.rank_; }

   private:
    const ProjectiveSpace* space_;
    std::uint64_t rank_;
    std::vector<std::uint32_t> coords_;
  };

  Iterator begin() const { return Iterator(this, 0); }
  Iterator end() const { return Iterator(this, size_); }

 private:
  int n_;
  PrimeField field_;
  std::uint64_t size_;
  // block_start_[i]: rank of the first point whose leading coordinate is at
  // index i; blocks are laid out for i = n, n-1, ..., 0.
  std::vector<std::uint64_t> block_start_;
};

// Points of P^n(F_q), each exactly once, in the canonical order. Throws
// InvalidField for a non-prime q.
ProjectiveSpace proj_points(int n, std::uint64_t q);

// Enumeration budget: q^n <= 10^7 per run. Throws CapacityExceeded.
inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;
void check_enumeration_capacity(int n, std::uint32_t q);

}  // namespace mrc
