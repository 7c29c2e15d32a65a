#include "geocl/estimation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geocl/errors.hpp"
#include "geocl/kernels.hpp"

namespace geocl {

namespace {

// 1/(1+e^z) without overflow on either side.
double sigmoid_neg(double z) {
  if (z >= 0.0) {
    const double t = std::exp(-z);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(z));
}

kernels::RatioParams ratio_params(const LogisticCurve& f1, const LogisticCurve& f2) {
  return kernels::RatioParams::make(f1.plateau, f1.alpha, f1.beta, f2.plateau, f2.alpha,
                                    f2.beta);
}

struct PairScan {
  double max_distance = 0.0;
  std::vector<std::uint64_t> pairs_le;  // unordered i<j pairs with d <= xs[k]
  std::vector<std::uint64_t> edges_le;  // non-loop edges with d <= xs[k]
  std::vector<double> xs;
};

// Smallest k with xs[k] >= d. Seeded by division, then fixed up so the
// result is exact regardless of rounding in the seed.
std::size_t grid_le_index(double d, double delta, const std::vector<double>& xs) {
  std::size_t k = delta > 0.0
                      ? std::min<std::size_t>(xs.size() - 1,
                                              static_cast<std::size_t>(std::ceil(d / delta)))
                      : 0;
  while (k > 0 && xs[k - 1] >= d) --k;
  while (xs[k] < d) ++k;  // xs.back() == max distance >= d, so this terminates
  return k;
}

PairScan scan_pairs(const SpatialGraph& g, std::size_t grid_size) {
  const std::size_t n = g.n();
  if (n == 0) throw std::invalid_argument("empirical CDF of an empty graph");
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
  const PositionsSoA soa = positions_soa(g);
  const auto& kb = kernels::active();
  std::vector<double> row(n);

  double maxd = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i + 1, soa.y.data() + i + 1,
               soa.z.data() + i + 1, row.data(), m);
    for (std::size_t j = 0; j < m; ++j) maxd = std::max(maxd, row[j]);
  }
  if (!(maxd > 0.0)) {
    throw NumericalError("degenerate geometry: max pairwise distance is zero");
  }

  PairScan scan;
  scan.max_distance = maxd;
  scan.xs.resize(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    scan.xs[k] = maxd * (static_cast<double>(k) / static_cast<double>(grid_size - 1));
  }
  const double delta = maxd / static_cast<double>(grid_size - 1);

  std::vector<std::uint64_t> pair_hist(grid_size, 0), edge_hist(grid_size, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i + 1, soa.y.data() + i + 1,
               soa.z.data() + i + 1, row.data(), m);
    for (std::size_t j = 0; j < m; ++j) ++pair_hist[grid_le_index(row[j], delta, scan.xs)];
  }
  for (const auto& [u, v] : g.edges()) {
    if (u == v) continue;
    ++edge_hist[grid_le_index(euclidean_distance(g, u, v), delta, scan.xs)];
  }

  scan.pairs_le.resize(grid_size);
  scan.edges_le.resize(grid_size);
  std::uint64_t pacc = 0, eacc = 0;
  for (std::size_t k = 0; k < grid_size; ++k) {
    pacc += pair_hist[k];
    eacc += edge_hist[k];
    scan.pairs_le[k] = pacc;
    scan.edges_le[k] = eacc;
  }
  return scan;
}

EmpiricalCdf cdf_from_scan(const PairScan& scan, const SpatialGraph& g, bool joint,
                           PairConvention conv) {
  const double n = static_cast<double>(g.n());
  const double loops = static_cast<double>(g.self_loop_count());
  EmpiricalCdf cdf;
  cdf.xs = scan.xs;
  cdf.ps.resize(scan.xs.size());
  for (std::size_t k = 0; k < scan.xs.size(); ++k) {
    const double pairs = static_cast<double>(scan.pairs_le[k]);
    const double edges = static_cast<double>(scan.edges_le[k]);
    if (conv == PairConvention::ordered) {
      cdf.ps[k] = joint ? (2.0 * edges + loops) / (n * n) : (2.0 * pairs + n) / (n * n);
    } else {
      const double denom = n * (n + 1.0) / 2.0;
      cdf.ps[k] = joint ? (edges + loops) / denom : (pairs + n) / denom;
    }
  }
  return cdf;
}

}  // namespace

double LogisticCurve::value(double x) const { return plateau * sigmoid_neg(alpha + beta * x); }

double LogisticCurve::derivative(double x) const {
  const double s = sigmoid_neg(alpha + beta * x);
  return -plateau * beta * s * (1.0 - s);
}

EmpiricalCdf empirical_f1(const SpatialGraph& g, std::size_t grid_size, PairConvention conv) {
  return cdf_from_scan(scan_pairs(g, grid_size), g, true, conv);
}

EmpiricalCdf empirical_f2(const SpatialGraph& g, std::size_t grid_size, PairConvention conv) {
  return cdf_from_scan(scan_pairs(g, grid_size), g, false, conv);
}

namespace {

double sse_of(const EmpiricalCdf& cdf, double plateau, double alpha, double beta) {
  double sse = 0.0;
  for (std::size_t k = 0; k < cdf.xs.size(); ++k) {
    const double r = plateau * sigmoid_neg(alpha + beta * cdf.xs[k]) - cdf.ps[k];
    sse += r * r;
  }
  return sse;
}

// First x where the empirical curve reaches level q, linearly interpolated.
double crossing(const EmpiricalCdf& cdf, double q) {
  for (std::size_t k = 0; k < cdf.xs.size(); ++k) {
    if (cdf.ps[k] >= q) {
      if (k == 0 || cdf.ps[k] == cdf.ps[k - 1]) return cdf.xs[k];
      const double t = (q - cdf.ps[k - 1]) / (cdf.ps[k] - cdf.ps[k - 1]);
      return cdf.xs[k - 1] + t * (cdf.xs[k] - cdf.xs[k - 1]);
    }
  }
  return cdf.xs.back();
}

}  // namespace

LogisticCurve fit_logistic(const EmpiricalCdf& cdf, double plateau) {
  const std::size_t m = cdf.xs.size();
  if (m < 3 || cdf.ps.size() != m) {
    throw std::invalid_argument("fit_logistic: need >= 3 grid points");
  }
  if (!(plateau > 0.0)) throw std::invalid_argument("fit_logistic: plateau must be positive");
  {
    std::vector<double> distinct(cdf.ps);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) {
      throw NumericalError("fit_logistic: degenerate CDF with fewer than 3 distinct values");
    }
  }

  const double pmax = *std::max_element(cdf.ps.begin(), cdf.ps.end());
  const double x25 = crossing(cdf, 0.25 * pmax);
  const double x75 = crossing(cdf, 0.75 * pmax);
  const double span = cdf.xs.back() - cdf.xs.front();
  const double width = (x75 > x25) ? (x75 - x25) : span / 10.0;
  constexpr double LN3 = 1.0986122886681098;
  double beta = -2.0 * LN3 / width;
  double alpha = LN3 - beta * x25;

  double sse = sse_of(cdf, plateau, alpha, beta);
  double lambda = 1e-3;
  for (int iter = 0; iter < 500; ++iter) {
    // Analytic Jacobian of v = plateau * s(z), z = alpha + beta*x:
    // dv/dalpha = -plateau*s*(1-s), dv/dbeta = x * dv/dalpha.
    double a00 = 0.0, a01 = 0.0, a11 = 0.0, g0 = 0.0, g1 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double s = sigmoid_neg(alpha + beta * cdf.xs[k]);
      const double v = plateau * s;
      const double dz = -plateau * s * (1.0 - s);
      const double r = v - cdf.ps[k];
      const double j0 = dz;
      const double j1 = dz * cdf.xs[k];
      a00 += j0 * j0;
      a01 += j0 * j1;
      a11 += j1 * j1;
      g0 += j0 * r;
      g1 += j1 * r;
    }
    bool stepped = false;
    double d0 = 0.0, d1 = 0.0;
    for (int tries = 0; tries < 60; ++tries) {
      const double m00 = a00 * (1.0 + lambda);
      const double m11 = a11 * (1.0 + lambda);
      const double det = m00 * m11 - a01 * a01;
      if (det == 0.0 || !std::isfinite(det)) {
        lambda *= 10.0;
        continue;
      }
      d0 = (-g0 * m11 + g1 * a01) / det;
      d1 = (-g1 * m00 + g0 * a01) / det;
      const double na = alpha + d0;
      const double nb = beta + d1;
      const double nsse = nb < 0.0 ? sse_of(cdf, plateau, na, nb)
                                   : std::numeric_limits<double>::infinity();
      if (nsse <= sse && std::isfinite(nsse)) {
        alpha = na;
        beta = nb;
        sse = nsse;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) {
      // Damping maxed out: we are at a (numerical) stationary point.
      break;
    }
    if (std::max(std::abs(d0), std::abs(d1)) < 1e-10) {
      return LogisticCurve{plateau, alpha, beta};
    }
  }
  // Accept a stalled solve only if the gradient is effectively zero;
  // otherwise report non-convergence with the residual.
  const double scale = std::max(1.0, sse);
  double g0 = 0.0, g1 = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double s = sigmoid_neg(alpha + beta * cdf.xs[k]);
    const double dz = -plateau * s * (1.0 - s);
    const double r = plateau * s - cdf.ps[k];
    g0 += dz * r;
    g1 += dz * cdf.xs[k] * r;
  }
  if (std::abs(g0) < 1e-8 * scale && std::abs(g1) < 1e-8 * scale * cdf.xs.back()) {
    return LogisticCurve{plateau, alpha, beta};
  }
  throw NumericalError("fit_logistic: no convergence after 500 iterations; residual SSE = " +
                       std::to_string(sse));
}

FitQuality fit_quality(const EmpiricalCdf& cdf, const LogisticCurve& curve, double x_min) {
  double se = 0.0, pe = 0.0;
  std::size_t n_mse = 0, n_pe = 0;
  for (std::size_t k = 0; k < cdf.xs.size(); ++k) {
    if (cdf.xs[k] < x_min) continue;
    const double r = curve.value(cdf.xs[k]) - cdf.ps[k];
    se += r * r;
    ++n_mse;
    if (cdf.ps[k] > 0.0) {
      pe += 100.0 * std::abs(r) / cdf.ps[k];
      ++n_pe;
    }
  }
  if (n_mse == 0) throw std::invalid_argument("fit_quality: empty grid restriction");
  FitQuality q;
  q.mse = se / static_cast<double>(n_mse);
  q.mean_percent_error = n_pe ? pe / static_cast<double>(n_pe) : 0.0;
  return q;
}

ChungLuCheck check_chung_lu_condition(const std::vector<double>& rho) {
  ChungLuCheck c;
  c.sum_rho = 0.0;
  for (double r : rho) c.sum_rho += r;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    c.max_rho = std::max(c.max_rho, rho[i]);
    if (rho[i] * rho[i] >= c.sum_rho) c.violators.push_back(static_cast<VertexId>(i));
  }
  c.ok = c.violators.empty();
  return c;
}

double derivative_ratio(const LogisticCurve& f1, const LogisticCurve& f2, double x) {
  const kernels::RatioParams p = ratio_params(f1, f2);
  double out = 0.0;
  kernels::active().ratio_v(p, &x, &out, 1);
  return out;
}

double derivative_ratio(const ModelFit& fit, double x) {
  return derivative_ratio(fit.f1, fit.f2, x);
}

std::vector<double> geometric_weights(const SpatialGraph& g, const LogisticCurve& f1,
                                      const LogisticCurve& f2) {
  const std::size_t n = g.n();
  const PositionsSoA soa = positions_soa(g);
  const auto& kb = kernels::active();
  const kernels::RatioParams p = ratio_params(f1, f2);
  std::vector<double> dist(n), ratio(n), omega(n);
  for (std::size_t i = 0; i < n; ++i) {
    kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data(), soa.y.data(), soa.z.data(),
               dist.data(), n);
    kb.ratio_v(p, dist.data(), ratio.data(), n);
    double acc = 0.0;  // fixed j order: identical across kernels/threads
    for (std::size_t j = 0; j < n; ++j) acc += ratio[j];
    omega[i] = acc;
  }
  return omega;
}

std::vector<double> geometric_weights(const SpatialGraph& g, const ModelFit& fit) {
  return geometric_weights(g, fit.f1, fit.f2);
}

std::vector<double> estimate_intensities(const SpatialGraph& g, double epsilon,
                                         const std::vector<double>& omega) {
  if (omega.size() != g.n()) {
    throw std::invalid_argument("estimate_intensities: omega size mismatch");
  }
  const double n = static_cast<double>(g.n());
  std::vector<double> rho(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (!(omega[i] > 0.0)) {
      throw NumericalError("estimate_intensities: non-positive geometric weight at vertex " +
                           std::to_string(i));
    }
    rho[i] = static_cast<double>(g.degree(static_cast<VertexId>(i))) * n * epsilon / omega[i];
  }
  return rho;
}

std::vector<double> estimate_intensities(const SpatialGraph& g, const ModelFit& fit) {
  return estimate_intensities(g, fit.epsilon, fit.omega);
}

ModelFit fit_model(const SpatialGraph& g, std::size_t grid_size, PairConvention conv) {
  ModelFit fit;
  fit.convention = conv;
  fit.epsilon = edge_density(g);
  if (!(fit.epsilon > 0.0)) throw DataError("fit_model: reference graph has no edges");

  const PairScan scan = scan_pairs(g, grid_size);
  fit.max_distance = scan.max_distance;
  fit.emp_f1 = cdf_from_scan(scan, g, true, conv);
  fit.emp_f2 = cdf_from_scan(scan, g, false, conv);

  fit.f1 = fit_logistic(fit.emp_f1, fit.epsilon);
  fit.f2 = fit_logistic(fit.emp_f2, 1.0);
  fit.f1_all = fit_quality(fit.emp_f1, fit.f1, 0.0);
  fit.f2_all = fit_quality(fit.emp_f2, fit.f2, 0.0);
  if (fit.max_distance > kTailThreshold) {
    fit.f1_tail = fit_quality(fit.emp_f1, fit.f1, kTailThreshold);
    fit.f2_tail = fit_quality(fit.emp_f2, fit.f2, kTailThreshold);
  } else {
    // No tail beyond the threshold: quality on that range is undefined.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    fit.f1_tail = FitQuality{nan, nan};
    fit.f2_tail = FitQuality{nan, nan};
  }

  fit.omega = geometric_weights(g, fit.f1, fit.f2);
  fit.rho_hat = estimate_intensities(g, fit.epsilon, fit.omega);
  fit.chung_lu = check_chung_lu_condition(fit.rho_hat);
  fit.sum_rho = fit.chung_lu.sum_rho;
  return fit;
}

}  // namespace geocl
