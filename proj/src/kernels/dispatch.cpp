#include <cstdlib>
#include <string>

#include "coherence/error.hpp"
#include "internal.hpp"

namespace coherence::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(COHERENCE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  require(supported(isa), ErrorKind::invalid_argument,
          "kernel ISA " + std::string(to_string(isa)) + " not available on this CPU/build");
#if defined(COHERENCE_HAVE_AVX2)
  if (isa == Isa::avx2) return avx2::table;
#endif
  return scalar::table;
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("COHERENCE_ISA")) {
    if (std::string_view(forced) == "scalar") return scalar::table;
  }
  if (supported(Isa::avx2)) return table(Isa::avx2);
  return scalar::table;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace coherence::kernels
