#include "geocl/kernels.hpp"

#include <cmath>

#include "exp_core.hpp"

// Scalar reference kernels. The AVX2 variant mirrors these op sequences
// lane-for-lane; any change here must be replicated there (the equivalence
// tests will catch a mismatch, but keep them in sync by hand anyway).

namespace geocl::kernels {
namespace {

using detail::exp_core;

inline double min_d(double a, double b) { return a < b ? a : b; }
inline double max_d(double a, double b) { return a > b ? a : b; }

void exp_v(const double* x, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = exp_core(x[k]);
}

void dist3_v(double x0, double y0, double z0, const double* xs, const double* ys,
             const double* zs, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x0 - xs[k];
    const double dy = y0 - ys[k];
    const double dz = z0 - zs[k];
    double s = dx * dx;
    s = s + dy * dy;
    s = s + dz * dz;
    out[k] = std::sqrt(s);
  }
}

inline double ratio_one(const RatioParams& p, double d) {
  const double z1 = p.a1 + p.b1 * d;
  const double z2 = p.a2 + p.b2 * d;
  const double zd = p.da + p.db * d;
  const double u1 = exp_core(z1);
  const double u2 = exp_core(z2);
  const double ud = exp_core(zd);
  const double t = (1.0 + u2) / (1.0 + u1);
  return (p.scale * ud) * (t * t);
}

void ratio_v(const RatioParams& p, const double* d, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = ratio_one(p, d[k]);
}

void logistic_deriv_v(double l, double a, double b, const double* x, double* out,
                      std::size_t n) {
  const double c = l * (-b);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = exp_core(a + b * x[k]);
    const double w = c * u;
    const double den = (1.0 + u) * (1.0 + u);
    out[k] = w / den;
  }
}

void edge_prob_v(const RatioParams& p, double inv_eps, double wfac, const double* rho,
                 const double* d, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ratio_one(p, d[k]);
    double w = wfac * rho[k];
    w = min_d(w, 1.0);
    double q = w * r;
    q = q * inv_eps;
    q = min_d(q, 1.0);
    q = max_d(q, 0.0);
    out[k] = q;
  }
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k{"scalar", exp_v, dist3_v, ratio_v, logistic_deriv_v, edge_prob_v};
  return k;
}

}  // namespace geocl::kernels
