#pragma once

#include "coherence/kernels.hpp"

namespace coherence::kernels {

namespace scalar {
extern const KernelTable table;
}

#if defined(COHERENCE_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif

}  // namespace coherence::kernels
