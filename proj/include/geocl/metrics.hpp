#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geocl/graph.hpp"

namespace geocl {

struct ComponentCount {
  std::uint64_t total = 0;
  std::uint64_t non_isolated = 0;  // components with >= 2 vertices
};

// Unordered triples of distinct, pairwise-adjacent vertices. Loops ignored.
std::uint64_t count_triangles(const SpatialGraph& g);

// trace(A^4) with A the 0/1 adjacency, A_ii = 1 iff self-loop at i.
std::uint64_t closed_4_walks(const SpatialGraph& g);

// Self-loops do not connect anything; an isolated vertex is its own component.
ComponentCount components(const SpatialGraph& g);

// All n eigenvalues of the symmetric adjacency (A_ii = 1 for loops),
// ascending. Dense symmetric eigensolver.
std::vector<double> adjacency_spectrum(const SpatialGraph& g);

// Sum over unordered pairs {u,v}, u != i != v, of the fraction of shortest
// u-v paths through i. Unreachable pairs contribute 0; loops ignored;
// unnormalized. (Brandes' accumulation.)
std::vector<double> betweenness(const SpatialGraph& g);

// Per component C_i of i: |C_i| / sum of graph distances from i within C_i;
// isolated vertices get 0.
std::vector<double> closeness(const SpatialGraph& g);

// Unit-norm nonnegative eigenvector of the largest adjacency eigenvalue,
// by power iteration on A + I (the shift makes the dominant eigenvalue
// strictly largest in modulus); residual ||Av - lambda v|| <= 1e-10.
// Throws NumericalError on non-convergence.
std::vector<double> eigencentrality(const SpatialGraph& g);

struct GraphStats {
  std::uint64_t self_loops = 0;
  std::uint64_t connected_components = 0;
  std::uint64_t non_isolated_components = 0;
  std::uint64_t max_degree = 0;
  std::uint64_t edges = 0;
  std::uint64_t triangles = 0;
  std::uint64_t closed_4_walks = 0;
  std::vector<double> spectrum;        // empty unless requested
  std::vector<double> betweenness;     // empty unless requested
  std::vector<double> closeness;       // empty unless requested
  std::vector<double> eigencentrality; // empty unless requested
};

struct StatsOptions {
  bool spectrum = true;
  bool centralities = true;
};

GraphStats stats_bundle(const SpatialGraph& g, const StatsOptions& opts = {});

struct ScalarSummary {
  std::string name;
  double mean = 0.0;
  double stddev = 0.0;  // sample std (n-1)
  double min = 0.0;
  double max = 0.0;
  double reference = 0.0;
  double z = 0.0;  // (reference - mean)/stddev; NaN when stddev == 0
};

struct EnsembleSummary {
  std::size_t replicates = 0;
  std::vector<ScalarSummary> stats;  // fixed statistic order
};

// Scalar statistics of the ensemble vs the reference graph. Requires >= 2
// replicates (sample std).
EnsembleSummary ensemble_summary(const std::vector<GraphStats>& ensemble,
                                 const GraphStats& reference);

}  // namespace geocl
