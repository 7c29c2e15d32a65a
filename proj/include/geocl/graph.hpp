#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace geocl {

using VertexId = std::uint32_t;

// Undirected edge, normalized so first <= second; first == second is a
// self-loop.
using Edge = std::pair<VertexId, VertexId>;

// Coordinates in micrometers.
struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Structure-of-arrays view of vertex positions, the layout the batch kernels
// consume.
struct PositionsSoA {
  std::vector<double> x, y, z;
};

// Spatially embedded undirected graph: self-loops allowed, duplicate edges
// not. Vertices optionally carry string labels (neuron ids). Instances are
// immutable after construction; the operations in this header are pure.
class SpatialGraph {
 public:
  SpatialGraph() = default;

  // Edges may be given in any order/orientation; they are normalized and
  // sorted. Throws std::invalid_argument on out-of-range endpoints, duplicate
  // edges, or a label vector whose size differs from positions'.
  SpatialGraph(std::vector<Position> positions, std::vector<Edge> edges,
               std::vector<std::string> labels = {});

  std::size_t n() const { return positions_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t self_loop_count() const { return self_loops_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Position>& positions() const { return positions_; }
  const Position& position(VertexId v) const { return positions_.at(v); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Empty string when the graph is unlabeled.
  const std::string& label(VertexId v) const;

  // Sorted adjacency; a self-loop contributes one entry (v itself).
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
  bool has_edge(VertexId u, VertexId v) const;

  // Incident edge count; a self-loop counts once.
  std::uint32_t degree(VertexId v) const {
    return static_cast<std::uint32_t>(adjacency_.at(v).size());
  }

 private:
  std::vector<Position> positions_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t self_loops_ = 0;
};

double euclidean_distance(const SpatialGraph& g, VertexId u, VertexId v);

// 2|E| / ((n+1) n) with |E| counting self-loops once. Zero for n == 0.
double edge_density(const SpatialGraph& g);

std::vector<std::uint32_t> degrees(const SpatialGraph& g);

// Mean Euclidean distance over unordered distinct pairs; 0 when n < 2.
double mean_pairwise_distance(const SpatialGraph& g);

PositionsSoA positions_soa(const SpatialGraph& g);

struct Subgraph {
  SpatialGraph graph;
  std::vector<VertexId> old_ids;  // old_ids[new] == id in the parent graph
};

// Subgraph induced by `keep` (unique, in range); new ids follow keep order.
Subgraph induced_subgraph(const SpatialGraph& g, std::span<const VertexId> keep);

// Remove the k highest-degree vertices; among equal degrees the lowest
// VertexId is removed first. Surviving vertices keep their relative order.
Subgraph trim_top_degree(const SpatialGraph& g, std::uint32_t k);

// CSV exchange format.
//   vertices: id,x,y,z,label   (ids must be exactly 0..n-1; label may be empty)
//   edges:    src,dst          (normalized on load; duplicates rejected)
// Loader errors carry 1-based line numbers. Doubles are written with enough
// digits to round-trip exactly.
void write_graph_csv(const SpatialGraph& g, const std::string& vertices_path,
                     const std::string& edges_path);
SpatialGraph load_graph_csv(const std::string& vertices_path, const std::string& edges_path);

}  // namespace geocl
