#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Batched numeric kernels with runtime-selected SIMD variants.
//
// Contract: every variant applies the identical IEEE-754 operation sequence
// per element as the scalar reference (shared exp algorithm, no FMA
// contraction), so results are bitwise equal no matter which variant runs.
// tests/test_kernels.cpp enforces this. Callers keep reductions (sums over
// kernel output buffers) in fixed index order, which makes every quantity in
// the library independent of kernel choice and thread count.
//
// Selection: best variant supported by the CPU, overridable with the
// GEOCL_KERNEL environment variable ("scalar", "avx2").

namespace geocl::kernels {

// Parameters for the logistic-derivative ratio
//
//   r(x) = scale * e^{zd} * ((1 + e^{z2}) / (1 + e^{z1}))^2,
//   z1 = a1 + b1*x,  z2 = a2 + b2*x,  zd = (a1-a2) + (b1-b2)*x,
//   scale = (L1/L2) * (b1/b2),
//
// algebraically F1'(x)/F2'(x) for scaled logistic CDFs Li/(1+e^{ai+bi*x}).
// Evaluating exp on the difference zd keeps the ratio finite when both
// derivatives underflow, and makes r(x) == L1/L2 exactly when the two curves
// share a,b (zd == 0 and the quotient cancels bitwise).
struct RatioParams {
  double a1, b1, a2, b2;
  double da, db;   // a1-a2, b1-b2
  double scale;    // (L1/L2)*(b1/b2)

  static RatioParams make(double l1, double a1, double b1, double l2, double a2, double b2) {
    return RatioParams{a1, b1, a2, b2, a1 - a2, b1 - b2, (l1 / l2) * (b1 / b2)};
  }
};

struct Kernels {
  const char* name;

  // out[k] = exp(x[k]); saturates to exp(-708) / exp(709) outside [-708, 709],
  // ~1 ulp inside. Finite inputs only.
  void (*exp_v)(const double* x, double* out, std::size_t n);

  // out[k] = Euclidean distance from (x0,y0,z0) to (xs[k], ys[k], zs[k]).
  void (*dist3_v)(double x0, double y0, double z0, const double* xs, const double* ys,
                  const double* zs, double* out, std::size_t n);

  // out[k] = r(d[k]) per RatioParams.
  void (*ratio_v)(const RatioParams& p, const double* d, double* out, std::size_t n);

  // out[k] = L * (-b) * u / (1+u)^2 with u = exp(a + b*x[k]); the derivative
  // of the scaled logistic CDF (positive for b < 0).
  void (*logistic_deriv_v)(double l, double a, double b, const double* x, double* out,
                           std::size_t n);

  // out[k] = clamp( min(wfac*rho[k], 1) * r(d[k]) * inv_eps, 0, 1 ).
  // wfac folds the fixed row weight rho_i / sum_rho.
  void (*edge_prob_v)(const RatioParams& p, double inv_eps, double wfac, const double* rho,
                      const double* d, double* out, std::size_t n);
};

// Process-wide active variant (env override applied once, thread-safe).
const Kernels& active();

// The scalar reference implementation.
const Kernels& scalar();

// Lookup by name; nullptr if unknown or unsupported on this CPU.
const Kernels* by_name(const std::string& name);

// Names of all variants usable on this machine, scalar first.
std::vector<std::string> available();

}  // namespace geocl::kernels
