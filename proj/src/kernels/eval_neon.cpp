#include "kernels/eval_impl.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)
#define MRC_HAVE_NEON_KERNEL 1
#include <arm_neon.h>
#else
#define MRC_HAVE_NEON_KERNEL 0
#endif

namespace mrc::kernels::detail {

#if MRC_HAVE_NEON_KERNEL

namespace {

// Same exact-float reduction as the AVX2 kernel (q < 4096); signed lanes so
// the off-by-one correction can go negative.
inline int32x4_t mulmod(int32x4_t a, int32x4_t b, int32x4_t q, float32x4_t inv_q) {
  const int32x4_t prod = vmulq_s32(a, b);
  const int32x4_t quot = vcvtq_s32_f32(vmulq_f32(vcvtq_f32_s32(prod), inv_q));
  int32x4_t r = vmlsq_s32(prod, quot, q);
  r = vaddq_s32(r, vandq_s32(q, vreinterpretq_s32_u32(vcltq_s32(r, vdupq_n_s32(0)))));
  r = vsubq_s32(r, vandq_s32(q, vreinterpretq_s32_u32(vcgeq_s32(r, q))));
  return r;
}

inline int32x4_t addmod(int32x4_t a, int32x4_t b, int32x4_t q) {
  const int32x4_t s = vaddq_s32(a, b);
  return vsubq_s32(s, vandq_s32(q, vreinterpretq_s32_u32(vcgeq_s32(s, q))));
}

}  // namespace

bool eval_neon(const EvalArgs& a) {
  const int32x4_t q = vdupq_n_s32(static_cast<int32_t>(a.modulus));
  const float32x4_t inv_q = vdupq_n_f32(1.0f / static_cast<float>(a.modulus));
  std::size_t i = 0;
  for (; i + 4 <= a.count; i += 4) {
    int32x4_t sum = vdupq_n_s32(0);
    for (std::size_t t = 0; t < a.term_count; ++t) {
      int32x4_t acc = vdupq_n_s32(static_cast<int32_t>(a.coefs[t]));
      const std::uint32_t* f = a.factors + t * a.degree;
      for (unsigned k = 0; k < a.degree; ++k) {
        const int32x4_t x = vreinterpretq_s32_u32(vld1q_u32(a.points + f[k] * a.stride + i));
        acc = mulmod(acc, x, q, inv_q);
      }
      sum = addmod(sum, acc, q);
    }
    vst1q_u32(a.out + i, vreinterpretq_u32_s32(sum));
  }
  if (i < a.count) {
    EvalArgs tail = a;
    tail.points = a.points + i;
    tail.count = a.count - i;
    tail.out = a.out + i;
    eval_scalar(tail);
  }
  return true;
}

bool neon_compiled() { return true; }

#else

bool eval_neon(const EvalArgs&) { return false; }
bool neon_compiled() { return false; }

#endif

}  // namespace mrc::kernels::detail
