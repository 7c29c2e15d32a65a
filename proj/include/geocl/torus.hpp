#pragma once

#include <cstdint>
#include <vector>

#include "geocl/estimation.hpp"
#include "geocl/graph.hpp"

namespace geocl {

// Validation sandbox: the generic model on a uniform d-dimensional unit
// torus, where F2 is known analytically, so the sampler can be checked
// against exact expectations (mean degree == intensity, density == epsilon).

// F1 shape. `flat` means F1 = epsilon * F2, i.e. a constant derivative ratio:
// the model degenerates to pure Chung-Lu. `logistic` uses a logistic F1
// truncated to the torus diameter (plateau rescaled so F1(diameter) equals
// epsilon exactly).
enum class TorusF1 { logistic, flat };

struct TorusConfig {
  int dim = 1;  // 1 or 2
  std::uint32_t n = 0;
  double epsilon = 0.0;  // model density; sum(rho)/n^2 for self-consistency
  TorusF1 f1_kind = TorusF1::logistic;
  LogisticCurve f1;           // used when f1_kind == logistic
  std::vector<double> rho;    // size n, Chung-Lu condition required
};

double torus_diameter(int dim);  // 1/2 (dim 1), sqrt(2)/2 (dim 2)
double torus_distance(int dim, const Position& a, const Position& b);

// CDF / density of the distance between two uniform points.
//   dim 1: F2(x) = 2x on [0, 1/2]
//   dim 2: pi x^2 for x <= 1/2, with the four circle-segment caps subtracted
//          beyond 1/2; F2'(x) = 2 pi x, resp. 2 pi x - 8 x arccos(1/(2x)).
double torus_f2(int dim, double x);
double torus_f2_prime(int dim, double x);

// Logistic F1 with plateau scaled so that F1(diameter) == epsilon exactly.
LogisticCurve torus_f1_curve(double epsilon, double alpha, double beta, int dim);

// Positions uniform on [0,1)^dim (z = 0; y = 0 for dim 1) from a SplitMix64
// stream seeded with mix64(seed + GOLDEN); pair {i,j} with i < j becomes an
// edge with probability min{rho_i rho_j / sum_rho, 1} * F1'(d)/F2'(d) / eps
// (clamped), drawn via pair_uniform(seed, i, j). Self-pairs carry the loop
// mass concentrated at distance 0: p_ii = min{rho_i^2 / sum_rho, 1}.
// NOTE: the stored positions are torus coordinates; euclidean_distance on the
// returned graph is NOT the toroidal metric.
SpatialGraph torus_generate(const TorusConfig& tc, std::uint64_t seed);

}  // namespace geocl
