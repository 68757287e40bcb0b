#pragma once

// Batched evaluation of homogeneous forms over F_q at many points.
//
// A scalar reference kernel handles every modulus. Vector kernels (AVX2 on
// x86-64, NEON on AArch64) handle q < kVectorModulusLimit, where products of
// residues stay below 2^24 and reduce exactly through single-precision
// floats. Selection happens at runtime; MRC_KERNEL=scalar forces the
// reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mrc/poly.hpp"

namespace mrc::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

inline constexpr std::uint32_t kVectorModulusLimit = 4096;

// Flattened form: term t is coefs[t] * prod_{k<degree} x[factors[t*degree+k]].
struct CompiledPoly {
  std::uint32_t modulus = 0;
  std::size_t num_vars = 0;
  unsigned degree = 0;
  std::vector<std::uint32_t> coefs;
  std::vector<std::uint32_t> factors;

  static CompiledPoly compile(const MultiPoly& f);
  std::size_t term_count() const noexcept { return coefs.size(); }
};

// Structure-of-arrays block of points: coordinate v of lane i lives at
// data[v * capacity + i].
class PointBlock {
 public:
  PointBlock(std::size_t num_vars, std::size_t capacity)
      : num_vars_(num_vars), capacity_(capacity), data_(num_vars * capacity) {}

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return size_; }
  void resize(std::size_t size) { size_ = size; }

  std::uint32_t* column(std::size_t v) noexcept { return data_.data() + v * capacity_; }
  const std::uint32_t* column(std::size_t v) const noexcept { return data_.data() + v * capacity_; }
  std::uint32_t& at(std::size_t v, std::size_t lane) noexcept { return data_[v * capacity_ + lane]; }
  std::uint32_t at(std::size_t v, std::size_t lane) const noexcept { return data_[v * capacity_ + lane]; }

 private:
  std::size_t num_vars_;
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::vector<std::uint32_t> data_;
};

// True if the ISA is compiled in and supported by the running CPU.
bool isa_available(Isa isa);
// Best available ISA for the modulus, honoring MRC_KERNEL.
Isa select_isa(std::uint32_t modulus);

// out[i] = f(point i) for i < block.size(). Throws IncompatibleOperands if
// the ISA is unavailable or cannot handle the modulus.
void eval_block(Isa isa, const CompiledPoly& f, const PointBlock& block, std::span<std::uint32_t> out);
void eval_block(const CompiledPoly& f, const PointBlock& block, std::span<std::uint32_t> out);

}  // namespace mrc::kernels
