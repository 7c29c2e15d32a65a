#pragma once

#include <cstdint>
#include <vector>

#include "geocl/graph.hpp"

namespace geocl {

// Classical Chung-Lu: independent Bernoulli per unordered pair (self-pairs
// included) with p = min{w_i w_j / sum(w), 1}. Positions and labels are
// copied from the reference graph. Deterministic in seed: pair {i,j} draws
// pair_uniform(seed, i, j).
SpatialGraph chung_lu_generate(const SpatialGraph& ref, const std::vector<double>& weights,
                               std::uint64_t seed);

struct InversePowerCurve {
  double k = 1.0;        // scale
  double beta_exp = 1.0; // positive exponent
  double value(double x) const;        // k * x^(-beta_exp)
  double probability(double x) const;  // value clamped to [0,1]
};

// Weighted log-log least squares through (x_k, p_k) with weights w_k:
// minimizes sum w_k (log k - beta log x_k - log p_k)^2. Requires >= 2 points
// with x > 0, p > 0, w > 0.
InversePowerCurve fit_inverse_power_points(const std::vector<double>& xs,
                                           const std::vector<double>& ps,
                                           const std::vector<double>& weights);

// Empirical conditional edge probability per distance bin (`bins` equal-width
// bins over (0, max pairwise distance], d = 0 excluded), then the weighted
// log-log fit above with pair counts as weights. Bins with no pairs or no
// edges are skipped. Throws NumericalError when fewer than 2 usable bins.
InversePowerCurve fit_inverse_power(const SpatialGraph& g, std::size_t bins = 50);

struct DistanceBin {
  double lo = 0.0, hi = 0.0;          // interval (lo, hi]
  std::uint64_t pairs = 0, edges = 0;
  bool defined = false;               // false when the interval holds no pairs
  double p = 0.0;                     // edges/pairs when defined
};

struct ShortRangeTable {
  double p_self_loop = 0.0;  // self-loops / n
  std::vector<DistanceBin> bins;
};

// Conditional connection probabilities for consecutive intervals
// (breaks[b], breaks[b+1]]; breaks must be sorted strictly increasing.
ShortRangeTable short_range_probabilities(const SpatialGraph& g,
                                          const std::vector<double>& breaks);

// Per-bin empirical connection probabilities, the raw material of the
// inverse-power fit; exposed for reports and the model-comparison plots.
std::vector<DistanceBin> distance_profile(const SpatialGraph& g, std::size_t bins);

}  // namespace geocl
