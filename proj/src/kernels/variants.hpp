#pragma once

#include "geocl/kernels.hpp"

namespace geocl::kernels {

#if defined(GEOCL_HAVE_AVX2)
// Defined in avx2.cpp; compiled only when the compiler supports -mavx2.
// Callers must still gate on runtime CPU support.
const Kernels& avx2_variant();
#endif

}  // namespace geocl::kernels
