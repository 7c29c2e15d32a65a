#pragma once

#include <bit>
#include <cstdint>

// Shared constants and the reference algorithm for the kernel exp.
//
// exp(x) = 2^k * R(r), k = nearest-even(x/ln 2), r = x - k*ln2 (Cody-Waite
// two-part reduction), R the Cephes rational approximation on |r| <= ln2/2.
// k is produced with the magic-number round (add/subtract 1.5*2^52) and 2^k
// assembled from exponent bits, so the whole pipeline is branch-free and maps
// 1:1 onto SIMD lanes. Inputs are clamped to [-708, 709], which keeps the
// biased exponent of 2^k inside [1, 2046]: no subnormals, no overflow, and
// bitwise identical behaviour between the scalar and vector variants.

namespace geocl::kernels::detail {

inline constexpr double EXP_LO = -708.0;
inline constexpr double EXP_HI = 709.0;
inline constexpr double LOG2E = 1.4426950408889634074;
inline constexpr double LN2_HI = 6.93145751953125e-1;
inline constexpr double LN2_LO = 1.42860682030941723212e-6;
inline constexpr double RND_MAGIC = 6755399441055744.0;  // 1.5 * 2^52

inline constexpr double EXP_P0 = 1.26177193074810590878e-4;
inline constexpr double EXP_P1 = 3.02994407707441961300e-2;
inline constexpr double EXP_P2 = 9.99999999999999999910e-1;
inline constexpr double EXP_Q0 = 3.00198505138664455042e-6;
inline constexpr double EXP_Q1 = 2.52448340349684104192e-3;
inline constexpr double EXP_Q2 = 2.27265548208155028766e-1;
inline constexpr double EXP_Q3 = 2.00000000000000000005e0;

inline double exp_core(double x) {
  x = x < EXP_HI ? x : EXP_HI;  // == _mm_min_pd semantics (NaN -> EXP_HI)
  x = x > EXP_LO ? x : EXP_LO;
  const double k = (x * LOG2E + RND_MAGIC) - RND_MAGIC;
  double r = x - k * LN2_HI;
  r = r - k * LN2_LO;
  const double r2 = r * r;
  const double p = ((EXP_P0 * r2 + EXP_P1) * r2 + EXP_P2) * r;
  const double q = ((EXP_Q0 * r2 + EXP_Q1) * r2 + EXP_Q2) * r2 + EXP_Q3;
  const double e = 1.0 + 2.0 * (p / (q - p));
  const double t = (k + 1023.0) + RND_MAGIC;  // low mantissa bits now hold k+1023
  const std::uint64_t pow2k = std::bit_cast<std::uint64_t>(t) << 52;
  return e * std::bit_cast<double>(pow2k);
}

}  // namespace geocl::kernels::detail
