#include <cstdlib>
#include <string>

#include "kernels/eval_impl.hpp"
#include "mrc/errors.hpp"
#include "mrc/kernels.hpp"

namespace mrc::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

CompiledPoly CompiledPoly::compile(const MultiPoly& f) {
  CompiledPoly c;
  c.modulus = f.modulus();
  c.num_vars = f.num_vars();
  c.degree = f.degree();
  c.coefs.reserve(f.term_count());
  c.factors.reserve(f.term_count() * f.degree());
  for (const auto& [e, coef] : f.terms()) {
    c.coefs.push_back(coef);
    for (std::size_t v = 0; v < e.size(); ++v)
      for (unsigned k = 0; k < e[v]; ++k) c.factors.push_back(static_cast<std::uint32_t>(v));
  }
  return c;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return detail::avx2_compiled() && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
      return detail::neon_compiled();
  }
  return false;
}

namespace {

bool forced_scalar() {
  const char* env = std::getenv("MRC_KERNEL");
  return env != nullptr && std::string_view(env) == "scalar";
}

}  // namespace

Isa select_isa(std::uint32_t modulus) {
  if (forced_scalar() || modulus >= kVectorModulusLimit) return Isa::Scalar;
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

void eval_block(Isa isa, const CompiledPoly& f, const PointBlock& block, std::span<std::uint32_t> out) {
  if (out.size() < block.size())
    throw Error(ErrorKind::IncompatibleOperands, "output span shorter than point block");
  if (f.num_vars != block.num_vars())
    throw Error(ErrorKind::IncompatibleOperands, "point block and form differ in variable count");
  if (!isa_available(isa))
    throw Error(ErrorKind::IncompatibleOperands, std::string("kernel ") + std::string(to_string(isa)) + " unavailable");
  if (isa != Isa::Scalar && f.modulus >= kVectorModulusLimit)
    throw Error(ErrorKind::IncompatibleOperands, "vector kernels need q < 4096");

  const detail::EvalArgs args{f.modulus,         f.degree,          f.term_count(),
                              f.coefs.data(),    f.factors.data(),  block.column(0),
                              block.capacity(),  block.size(),      out.data()};
  switch (isa) {
    case Isa::Scalar: detail::eval_scalar(args); break;
    case Isa::Avx2: detail::eval_avx2(args); break;
    case Isa::Neon: detail::eval_neon(args); break;
  }
}

void eval_block(const CompiledPoly& f, const PointBlock& block, std::span<std::uint32_t> out) {
  eval_block(select_isa(f.modulus), f, block, out);
}

}  // namespace mrc::kernels
