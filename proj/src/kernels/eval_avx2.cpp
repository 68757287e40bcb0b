#include "kernels/eval_impl.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define MRC_HAVE_AVX2_KERNEL 1
#include <immintrin.h>
#else
#define MRC_HAVE_AVX2_KERNEL 0
#endif

namespace mrc::kernels::detail {

#if MRC_HAVE_AVX2_KERNEL

namespace {

// Residues a, b < q < 4096, so a*b < 2^24 is exact in float and the
// truncated quotient is off by at most one in either direction.
__attribute__((target("avx2"))) inline __m256i mulmod(__m256i a, __m256i b, __m256i q, __m256 inv_q) {
  const __m256i prod = _mm256_mullo_epi32(a, b);
  const __m256i quot = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(prod), inv_q));
  __m256i r = _mm256_sub_epi32(prod, _mm256_mullo_epi32(quot, q));
  r = _mm256_add_epi32(r, _mm256_and_si256(q, _mm256_cmpgt_epi32(_mm256_setzero_si256(), r)));
  r = _mm256_sub_epi32(r, _mm256_andnot_si256(_mm256_cmpgt_epi32(q, r), q));
  return r;
}

__attribute__((target("avx2"))) inline __m256i addmod(__m256i a, __m256i b, __m256i q) {
  const __m256i s = _mm256_add_epi32(a, b);
  return _mm256_sub_epi32(s, _mm256_andnot_si256(_mm256_cmpgt_epi32(q, s), q));
}

}  // namespace

__attribute__((target("avx2"))) bool eval_avx2(const EvalArgs& a) {
  const __m256i q = _mm256_set1_epi32(static_cast<int>(a.modulus));
  const __m256 inv_q = _mm256_set1_ps(1.0f / static_cast<float>(a.modulus));
  std::size_t i = 0;
  for (; i + 8 <= a.count; i += 8) {
    __m256i sum = _mm256_setzero_si256();
    for (std::size_t t = 0; t < a.term_count; ++t) {
      __m256i acc = _mm256_set1_epi32(static_cast<int>(a.coefs[t]));
      const std::uint32_t* f = a.factors + t * a.degree;
      for (unsigned k = 0; k < a.degree; ++k) {
        const __m256i x =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.points + f[k] * a.stride + i));
        acc = mulmod(acc, x, q, inv_q);
      }
      sum = addmod(sum, acc, q);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a.out + i), sum);
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

bool avx2_compiled() { return true; }

#else

bool eval_avx2(const EvalArgs&) { return false; }
bool avx2_compiled() { return false; }

#endif

}  // namespace mrc::kernels::detail
