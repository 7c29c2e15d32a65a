#include "geocl/torus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geocl/kernels.hpp"
#include "geocl/rng.hpp"

namespace geocl {

namespace {

constexpr double PI = 3.14159265358979323846;

void check_dim(int dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("torus: dim must be 1 or 2");
}

double wrap(double d) {
  d = std::abs(d);
  return d > 0.5 ? 1.0 - d : d;
}

}  // namespace

double torus_diameter(int dim) {
  check_dim(dim);
  return dim == 1 ? 0.5 : std::sqrt(2.0) / 2.0;
}

double torus_distance(int dim, const Position& a, const Position& b) {
  check_dim(dim);
  const double dx = wrap(a.x - b.x);
  if (dim == 1) return dx;
  const double dy = wrap(a.y - b.y);
  return std::sqrt(dx * dx + dy * dy);
}

double torus_f2(int dim, double x) {
  check_dim(dim);
  if (x <= 0.0) return 0.0;
  if (x >= torus_diameter(dim)) return 1.0;
  if (dim == 1) return 2.0 * x;
  if (x <= 0.5) return PI * x * x;
  // Disc of radius x minus the four segments protruding past the half-width.
  const double seg = x * x * std::acos(1.0 / (2.0 * x)) -
                     0.5 * std::sqrt(x * x - 0.25);
  return PI * x * x - 4.0 * seg;
}

double torus_f2_prime(int dim, double x) {
  check_dim(dim);
  const double diam = torus_diameter(dim);
  if (x < 0.0 || x > diam) return 0.0;
  if (dim == 1) return 2.0;
  if (x <= 0.5) return 2.0 * PI * x;
  // d/dx of the capped area: the sqrt terms cancel.
  return 2.0 * PI * x - 8.0 * x * std::acos(1.0 / (2.0 * x));
}

LogisticCurve torus_f1_curve(double epsilon, double alpha, double beta, int dim) {
  check_dim(dim);
  if (!(epsilon > 0.0)) throw std::invalid_argument("torus_f1_curve: epsilon must be positive");
  if (!(beta < 0.0)) throw std::invalid_argument("torus_f1_curve: beta must be negative");
  // plateau L solves L/(1+e^{alpha+beta*diam}) = epsilon.
  const double diam = torus_diameter(dim);
  const double l = epsilon * (1.0 + std::exp(alpha + beta * diam));
  return LogisticCurve{l, alpha, beta};
}

SpatialGraph torus_generate(const TorusConfig& tc, std::uint64_t seed) {
  check_dim(tc.dim);
  if (tc.rho.size() != tc.n) throw std::invalid_argument("torus_generate: rho size != n");
  if (!(tc.epsilon > 0.0)) throw std::invalid_argument("torus_generate: epsilon must be positive");
  const double diam = torus_diameter(tc.dim);
  if (tc.f1_kind == TorusF1::logistic) {
    const double at_diam = tc.f1.value(diam);
    if (std::abs(at_diam - tc.epsilon) > 1e-9 * tc.epsilon) {
      throw std::invalid_argument("torus_generate: f1 must reach epsilon at the torus diameter");
    }
  }
  double sum_rho = 0.0, max_rho = 0.0;
  for (double r : tc.rho) {
    if (!(r >= 0.0)) throw std::invalid_argument("torus_generate: negative intensity");
    sum_rho += r;
    max_rho = std::max(max_rho, r);
  }
  if (max_rho * max_rho >= sum_rho) {
    throw std::invalid_argument("torus_generate: rho violates the Chung-Lu condition");
  }

  const std::size_t n = tc.n;
  std::vector<Position> pos(n);
  rng::SplitMix64 stream(rng::mix64(seed + rng::GOLDEN));
  for (std::size_t i = 0; i < n; ++i) {
    pos[i].x = stream.next_double();
    if (tc.dim == 2) pos[i].y = stream.next_double();
  }

  const auto& kb = kernels::active();
  const double inv_eps = 1.0 / tc.epsilon;
  std::vector<double> dist(n), deriv(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const auto iu = static_cast<std::uint32_t>(i);
    // Self-pair: loop mass is a point mass at distance 0 (pure Chung-Lu).
    if (sum_rho > 0.0) {
      const double p_self = std::min(tc.rho[i] * tc.rho[i] / sum_rho, 1.0);
      if (p_self > 0.0 && rng::pair_uniform(seed, iu, iu) < p_self) {
        edges.emplace_back(iu, iu);
      }
    }
    const std::size_t m = n - i - 1;
    if (m == 0 || sum_rho <= 0.0) continue;
    for (std::size_t k = 0; k < m; ++k) {
      dist[k] = torus_distance(tc.dim, pos[i], pos[i + 1 + k]);
    }
    const double wfac = tc.rho[i] / sum_rho;
    if (tc.f1_kind == TorusF1::flat) {
      for (std::size_t k = 0; k < m; ++k) {
        const double p = std::min(wfac * tc.rho[i + 1 + k], 1.0);
        if (p > 0.0 &&
            rng::pair_uniform(seed, iu, static_cast<std::uint32_t>(i + 1 + k)) < p) {
          edges.emplace_back(iu, static_cast<std::uint32_t>(i + 1 + k));
        }
      }
      continue;
    }
    kb.logistic_deriv_v(tc.f1.plateau, tc.f1.alpha, tc.f1.beta, dist.data(), deriv.data(), m);
    for (std::size_t k = 0; k < m; ++k) {
      const double f2p = torus_f2_prime(tc.dim, dist[k]);
      const double w = std::min(wfac * tc.rho[i + 1 + k], 1.0);
      const double p = std::clamp(w * deriv[k] * inv_eps / f2p, 0.0, 1.0);
      if (p > 0.0 && rng::pair_uniform(seed, iu, static_cast<std::uint32_t>(i + 1 + k)) < p) {
        edges.emplace_back(iu, static_cast<std::uint32_t>(i + 1 + k));
      }
    }
  }
  return SpatialGraph(std::move(pos), std::move(edges));
}

}  // namespace geocl
