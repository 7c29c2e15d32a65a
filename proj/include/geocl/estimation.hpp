#pragma once

#include <cstdint>
#include <vector>

#include "geocl/graph.hpp"

namespace geocl {

// Scaled logistic CDF, value(x) = L / (1 + exp(alpha + beta x)), beta < 0 so
// the curve increases toward the plateau L.
struct LogisticCurve {
  double plateau = 1.0;  // L
  double alpha = 0.0;
  double beta = -1.0;    // 1/μm

  double value(double x) const;
  double derivative(double x) const;  // -L*beta*u/(1+u)^2, u = exp(alpha+beta*x)
  double midpoint() const { return -alpha / beta; }
};

struct EmpiricalCdf {
  std::vector<double> xs;  // strictly increasing grid
  std::vector<double> ps;  // non-decreasing, within [0,1]
};

// Pair-counting conventions for the empirical CDFs.
//   ordered:        denominator n^2; F2(0) = 1/n, F1(0) = loops/n^2 — the
//                   normalization behind the published observed values.
//   unordered_diag: unordered pairs i<=j, denominator n(n+1)/2; F2(0) =
//                   2/(n+1) and the F1 plateau equals edge_density exactly.
enum class PairConvention { ordered, unordered_diag };

inline constexpr std::size_t kDefaultGrid = 200;
inline constexpr double kTailThreshold = 500.0;  // μm, tail fit-quality cut

EmpiricalCdf empirical_f1(const SpatialGraph& g, std::size_t grid_size = kDefaultGrid,
                          PairConvention conv = PairConvention::ordered);
EmpiricalCdf empirical_f2(const SpatialGraph& g, std::size_t grid_size = kDefaultGrid,
                          PairConvention conv = PairConvention::ordered);

// Least squares over the grid for (alpha, beta) with the plateau held fixed.
// Damped Gauss-Newton with analytic Jacobian, initialized from the 25th/75th
// percentile crossings; max 500 iterations, converged when the step infinity
// norm drops below 1e-10. Deterministic. Throws NumericalError on
// non-convergence or a degenerate (flat) CDF.
LogisticCurve fit_logistic(const EmpiricalCdf& cdf, double plateau);

struct FitQuality {
  double mse = 0.0;
  double mean_percent_error = 0.0;  // mean of 100*|resid|/observed, observed > 0
};

// Quality over grid points with x >= x_min; throws on an empty restriction.
FitQuality fit_quality(const EmpiricalCdf& cdf, const LogisticCurve& curve, double x_min = 0.0);

struct ChungLuCheck {
  bool ok = false;
  std::vector<VertexId> violators;  // vertices with rho^2 >= sum_rho
  double max_rho = 0.0;
  double sum_rho = 0.0;
};

ChungLuCheck check_chung_lu_condition(const std::vector<double>& rho);

struct ModelFit {
  double epsilon = 0.0;        // edge density of the reference graph
  LogisticCurve f1;            // plateau = epsilon
  LogisticCurve f2;            // plateau = 1
  PairConvention convention = PairConvention::ordered;
  double max_distance = 0.0;   // grid upper end (μm)
  std::vector<double> omega;     // geometric weights
  std::vector<double> rho_hat;   // estimated intensities
  double sum_rho = 0.0;
  ChungLuCheck chung_lu;
  FitQuality f1_all, f1_tail, f2_all, f2_tail;  // tail: x >= kTailThreshold
  EmpiricalCdf emp_f1, emp_f2;
};

// F1'(x)/F2'(x), evaluated in a closed form that stays finite when both
// derivatives underflow and returns exactly L1/L2 for identical (alpha, beta).
double derivative_ratio(const LogisticCurve& f1, const LogisticCurve& f2, double x);
double derivative_ratio(const ModelFit& fit, double x);

// omega_i = sum over all j (including j == i at distance 0) of the derivative
// ratio at d_ij. Summed in fixed index order: bit-identical across kernel
// variants and thread counts.
std::vector<double> geometric_weights(const SpatialGraph& g, const LogisticCurve& f1,
                                      const LogisticCurve& f2);
std::vector<double> geometric_weights(const SpatialGraph& g, const ModelFit& fit);

// rho_hat_i = deg_i * n * epsilon / omega_i. Throws on a non-positive omega.
std::vector<double> estimate_intensities(const SpatialGraph& g, double epsilon,
                                         const std::vector<double>& omega);
std::vector<double> estimate_intensities(const SpatialGraph& g, const ModelFit& fit);

// Full estimation pipeline on a reference graph.
ModelFit fit_model(const SpatialGraph& g, std::size_t grid_size = kDefaultGrid,
                   PairConvention conv = PairConvention::ordered);

}  // namespace geocl
