#include "kernels/eval_impl.hpp"

namespace mrc::kernels::detail {

void eval_scalar(const EvalArgs& a) {
  const std::uint64_t q = a.modulus;
  for (std::size_t i = 0; i < a.count; ++i) {
    std::uint64_t sum = 0;
    for (std::size_t t = 0; t < a.term_count; ++t) {
      std::uint64_t acc = a.coefs[t];
      const std::uint32_t* f = a.factors + t * a.degree;
      for (unsigned k = 0; k < a.degree; ++k) acc = acc * a.points[f[k] * a.stride + i] % q;
      sum += acc;
      if (sum >= q) sum -= q;
    }
    a.out[i] = static_cast<std::uint32_t>(sum);
  }
}

}  // namespace mrc::kernels::detail
