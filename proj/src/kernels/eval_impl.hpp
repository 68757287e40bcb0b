#pragma once

// Entry points of the per-ISA translation units. Plain pointers only, so
// that no shared inline code is instantiated under a wider target.

#include <cstddef>
#include <cstdint>

namespace mrc::kernels::detail {

struct EvalArgs {
  std::uint32_t modulus;
  unsigned degree;
  std::size_t term_count;
  const std::uint32_t* coefs;
  const std::uint32_t* factors;
  const std::uint32_t* points;  // SoA, column stride `stride`
  std::size_t stride;
  std::size_t count;
  std::uint32_t* out;
};

void eval_scalar(const EvalArgs& args);
// Returns false when the kernel was not compiled for this target.
bool eval_avx2(const EvalArgs& args);
bool eval_neon(const EvalArgs& args);

bool avx2_compiled();
bool neon_compiled();

}  // namespace mrc::kernels::detail
