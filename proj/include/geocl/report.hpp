#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geocl/baselines.hpp"
#include "geocl/estimation.hpp"
#include "geocl/graph.hpp"
#include "geocl/metrics.hpp"

namespace geocl {

// Report emission. All output is deterministic byte-for-byte for identical
// inputs: JSON uses insertion-ordered keys and shortest round-trip doubles,
// CSV uses %.17g.

// {epsilon, alpha1, beta1, alpha2, beta2, mse_f1, mse_f2, mpe_f1, mpe_f2,
//  chung_lu_ok, violators, ...diagnostics}
void write_fit_report(const ModelFit& fit, const std::string& path);
ModelFit load_fit_report(const std::string& path);  // curves/eps/quality only

// id,degree,omega,rho_hat,dist_to_centroid
void write_intensities_csv(const SpatialGraph& g, const ModelFit& fit, const std::string& path);
// Returns rho_hat (and omega via out-param order) indexed by vertex id.
struct IntensityRows {
  std::vector<double> omega;
  std::vector<double> rho_hat;
};
IntensityRows load_intensities_csv(const std::string& path);

// x,emp_f1,fit_f1,emp_f2,fit_f2 — plot data for the CDF overlays.
void write_cdf_csv(const ModelFit& fit, const std::string& path);

// replicate,edges,self_loops,connected_components,non_isolated_components,
// max_degree,triangles,closed_4_walks
void write_stats_csv(const std::vector<GraphStats>& stats, const std::string& path);

void write_ensemble_summary_json(const EnsembleSummary& summary, const std::string& path);

// statistic,reference,mean,std,min,max,z
void write_comparison_csv(const EnsembleSummary& summary, const std::string& path);
std::string render_comparison_table(const EnsembleSummary& summary);

// bin_lo,bin_hi,reference_count,simulated_count over a shared equal-width grid.
void write_spectrum_histogram_csv(const std::vector<double>& reference,
                                  const std::vector<double>& simulated, std::size_t bins,
                                  const std::string& path);

// rank,reference,simulated — both columns sorted descending.
void write_centrality_rank_csv(const std::vector<double>& reference,
                               const std::vector<double>& simulated, const std::string& path);

// lo,hi,pairs,edges,p rows; the self-loop row uses lo=hi=0.
void write_short_range_csv(const ShortRangeTable& table, const std::string& path);

// 64-bit FNV-1a over a canonical rendering; stable across runs/platforms.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace geocl
