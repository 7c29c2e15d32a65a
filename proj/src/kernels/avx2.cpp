#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "exp_core.hpp"
#include "geocl/kernels.hpp"
#include "variants.hpp"

// AVX2 kernels, four doubles per lane group. Each lane executes the same
// IEEE op sequence as the scalar reference (see scalar.cpp); tails of n % 4
// elements run the scalar path, which is bitwise identical per element.
// No FMA: mul/add stay separate to match scalar codegen under
// -ffp-contract=off.

namespace geocl::kernels {
namespace {

namespace d = detail;

inline __m256d vexp(__m256d x) {
  const __m256d magic = _mm256_set1_pd(d::RND_MAGIC);
  x = _mm256_min_pd(x, _mm256_set1_pd(d::EXP_HI));
  x = _mm256_max_pd(x, _mm256_set1_pd(d::EXP_LO));
  const __m256d k =
      _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(x, _mm256_set1_pd(d::LOG2E)), magic), magic);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(k, _mm256_set1_pd(d::LN2_HI)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(k, _mm256_set1_pd(d::LN2_LO)));
  const __m256d r2 = _mm256_mul_pd(r, r);
  __m256d p = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(d::EXP_P0), r2),
                            _mm256_set1_pd(d::EXP_P1));
  p = _mm256_add_pd(_mm256_mul_pd(p, r2), _mm256_set1_pd(d::EXP_P2));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(d::EXP_Q0), r2),
                            _mm256_set1_pd(d::EXP_Q1));
  q = _mm256_add_pd(_mm256_mul_pd(q, r2), _mm256_set1_pd(d::EXP_Q2));
  q = _mm256_add_pd(_mm256_mul_pd(q, r2), _mm256_set1_pd(d::EXP_Q3));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d e = _mm256_add_pd(
      one, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_div_pd(p, _mm256_sub_pd(q, p))));
  const __m256d t = _mm256_add_pd(_mm256_add_pd(k, _mm256_set1_pd(1023.0)), magic);
  const __m256d pow2k =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_castpd_si256(t), 52));
  return _mm256_mul_pd(e, pow2k);
}

void exp_v(const double* x, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, vexp(_mm256_loadu_pd(x + k)));
  for (; k < n; ++k) out[k] = d::exp_core(x[k]);
}

void dist3_v(double x0, double y0, double z0, const double* xs, const double* ys,
             const double* zs, double* out, std::size_t n) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vy0 = _mm256_set1_pd(y0);
  const __m256d vz0 = _mm256_set1_pd(z0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d dx = _mm256_sub_pd(vx0, _mm256_loadu_pd(xs + k));
    const __m256d dy = _mm256_sub_pd(vy0, _mm256_loadu_pd(ys + k));
    const __m256d dz = _mm256_sub_pd(vz0, _mm256_loadu_pd(zs + k));
    __m256d s = _mm256_mul_pd(dx, dx);
    s = _mm256_add_pd(s, _mm256_mul_pd(dy, dy));
    s = _mm256_add_pd(s, _mm256_mul_pd(dz, dz));
    _mm256_storeu_pd(out + k, _mm256_sqrt_pd(s));
  }
  for (; k < n; ++k) {
    const double dx = x0 - xs[k];
    const double dy = y0 - ys[k];
    const double dz = z0 - zs[k];
    double s = dx * dx;
    s = s + dy * dy;
    s = s + dz * dz;
    out[k] = std::sqrt(s);
  }
}

inline __m256d vratio(const RatioParams& p, __m256d dist) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d z1 =
      _mm256_add_pd(_mm256_set1_pd(p.a1), _mm256_mul_pd(_mm256_set1_pd(p.b1), dist));
  const __m256d z2 =
      _mm256_add_pd(_mm256_set1_pd(p.a2), _mm256_mul_pd(_mm256_set1_pd(p.b2), dist));
  const __m256d zd =
      _mm256_add_pd(_mm256_set1_pd(p.da), _mm256_mul_pd(_mm256_set1_pd(p.db), dist));
  const __m256d u1 = vexp(z1);
  const __m256d u2 = vexp(z2);
  const __m256d ud = vexp(zd);
  const __m256d t = _mm256_div_pd(_mm256_add_pd(one, u2), _mm256_add_pd(one, u1));
  return _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(p.scale), ud), _mm256_mul_pd(t, t));
}

inline double ratio_one(const RatioParams& p, double dist) {
  const double z1 = p.a1 + p.b1 * dist;
  const double z2 = p.a2 + p.b2 * dist;
  const double zd = p.da + p.db * dist;
  const double u1 = d::exp_core(z1);
  const double u2 = d::exp_core(z2);
  const double ud = d::exp_core(zd);
  const double t = (1.0 + u2) / (1.0 + u1);
  return (p.scale * ud) * (t * t);
}

void ratio_v(const RatioParams& p, const double* dist, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, vratio(p, _mm256_loadu_pd(dist + k)));
  for (; k < n; ++k) out[k] = ratio_one(p, dist[k]);
}

void logistic_deriv_v(double l, double a, double b, const double* x, double* out,
                      std::size_t n) {
  const double c = l * (-b);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d u = vexp(_mm256_add_pd(va, _mm256_mul_pd(vb, _mm256_loadu_pd(x + k))));
    const __m256d w = _mm256_mul_pd(vc, u);
    const __m256d up1 = _mm256_add_pd(one, u);
    const __m256d den = _mm256_mul_pd(up1, up1);
    _mm256_storeu_pd(out + k, _mm256_div_pd(w, den));
  }
  for (; k < n; ++k) {
    const double u = d::exp_core(a + b * x[k]);
    const double w = c * u;
    const double den = (1.0 + u) * (1.0 + u);
    out[k] = w / den;
  }
}

void edge_prob_v(const RatioParams& p, double inv_eps, double wfac, const double* rho,
                 const double* dist, double* out, std::size_t n) {
  const __m256d vwf = _mm256_set1_pd(wfac);
  const __m256d vie = _mm256_set1_pd(inv_eps);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d r = vratio(p, _mm256_loadu_pd(dist + k));
    __m256d w = _mm256_mul_pd(vwf, _mm256_loadu_pd(rho + k));
    w = _mm256_min_pd(w, one);
    __m256d q = _mm256_mul_pd(w, r);
    q = _mm256_mul_pd(q, vie);
    q = _mm256_min_pd(q, one);
    q = _mm256_max_pd(q, zero);
    _mm256_storeu_pd(out + k, q);
  }
  for (; k < n; ++k) {
    const double r = ratio_one(p, dist[k]);
    double w = wfac * rho[k];
    w = w < 1.0 ? w : 1.0;
    double q = w * r;
    q = q * inv_eps;
    q = q < 1.0 ? q : 1.0;
    q = q > 0.0 ? q : 0.0;
    out[k] = q;
  }
}

}  // namespace

const Kernels& avx2_variant() {
  static const Kernels k{"avx2", exp_v, dist3_v, ratio_v, logistic_deriv_v, edge_prob_v};
  return k;
}

}  // namespace geocl::kernels
