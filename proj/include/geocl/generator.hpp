#pragma once

#include <cstdint>
#include <vector>

#include "geocl/estimation.hpp"
#include "geocl/graph.hpp"

namespace geocl {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::uint32_t replicates = 1;
  bool permute_intensities = true;
  bool clamp_probabilities = true;  // always honored; kept on the config surface
};

// min{rho_i*rho_j/sum_rho, 1} * ratio(d) / epsilon, clamped to [0,1].
// Zero intensity on either endpoint gives exactly 0.
double connection_probability(const ModelFit& fit, double rho_i, double rho_j, double d);

// Sample one synthetic graph over the reference vertex set: positions and
// labels are copied, intensities are (optionally) permuted uniformly at
// random over vertices, and each unordered pair {i,j} (i.e. including
// self-pairs at d=0) becomes an edge independently with
// connection_probability. Deterministic in (cfg.seed, replicate_index):
// the replicate child seed is mix64(seed + GOLDEN*(replicate+1)), the
// permutation is a Fisher-Yates shuffle on a SplitMix64 stream seeded with
// mix64(child + GOLDEN), and each pair draw is the counter-based
// pair_uniform(child, i, j).
SpatialGraph generate_graph(const SpatialGraph& ref, const ModelFit& fit,
                            const GeneratorConfig& cfg, std::uint32_t replicate_index);

// Replicates 0..replicates-1; embarrassingly parallel (GEOCL_THREADS caps the
// worker count) with content independent of the schedule.
std::vector<SpatialGraph> generate_ensemble(const SpatialGraph& ref, const ModelFit& fit,
                                            const GeneratorConfig& cfg);

// Analytic expected edge count Sum_{i<=j} p_ij under the identity permutation.
double expected_edge_count(const SpatialGraph& ref, const ModelFit& fit);

}  // namespace geocl
