#include "geocl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "csv_util.hpp"
#include "geocl/errors.hpp"
#include "geocl/kernels.hpp"

namespace geocl {

SpatialGraph::SpatialGraph(std::vector<Position> positions, std::vector<Edge> edges,
                           std::vector<std::string> labels)
    : positions_(std::move(positions)), labels_(std::move(labels)), edges_(std::move(edges)) {
  const std::size_t nv = positions_.size();
  if (!labels_.empty() && labels_.size() != nv) {
    throw std::invalid_argument("labels size does not match vertex count");
  }
  for (auto& [u, v] : edges_) {
    if (u >= nv || v >= nv) throw std::invalid_argument("edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  adjacency_.resize(nv);
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    if (u != v) {
      adjacency_[v].push_back(u);
    } else {
      ++self_loops_;
    }
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

const std::string& SpatialGraph::label(VertexId v) const {
  static const std::string empty;
  if (v >= positions_.size()) throw std::out_of_range("vertex id out of range");
  return labels_.empty() ? empty : labels_[v];
}

bool SpatialGraph::has_edge(VertexId u, VertexId v) const {
  const auto& nb = adjacency_.at(u);
  if (v >= positions_.size()) throw std::out_of_range("vertex id out of range");
  return std::binary_search(nb.begin(), nb.end(), v);
}

double euclidean_distance(const SpatialGraph& g, VertexId u, VertexId v) {
  const Position& a = g.position(u);
  const Position& b = g.position(v);
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  double s = dx * dx;
  s = s + dy * dy;
  s = s + dz * dz;
  return std::sqrt(s);
}

double edge_density(const SpatialGraph& g) {
  const double n = static_cast<double>(g.n());
  if (g.n() == 0) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) / ((n + 1.0) * n);
}

std::vector<std::uint32_t> degrees(const SpatialGraph& g) {
  std::vector<std::uint32_t> d(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) d[v] = g.degree(static_cast<VertexId>(v));
  return d;
}

PositionsSoA positions_soa(const SpatialGraph& g) {
  PositionsSoA s;
  s.x.reserve(g.n());
  s.y.reserve(g.n());
  s.z.reserve(g.n());
  for (const Position& p : g.positions()) {
    s.x.push_back(p.x);
    s.y.push_back(p.y);
    s.z.push_back(p.z);
  }
  return s;
}

double mean_pairwise_distance(const SpatialGraph& g) {
  const std::size_t n = g.n();
  if (n < 2) return 0.0;
  const PositionsSoA soa = positions_soa(g);
  const auto& k = kernels::active();
  std::vector<double> row(n);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    k.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i + 1, soa.y.data() + i + 1,
              soa.z.data() + i + 1, row.data(), m);
    for (std::size_t j = 0; j < m; ++j) sum += row[j];
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

Subgraph induced_subgraph(const SpatialGraph& g, std::span<const VertexId> keep) {
  constexpr VertexId NONE = ~VertexId{0};
  std::vector<VertexId> old_to_new(g.n(), NONE);
  std::vector<Position> pos;
  std::vector<std::string> labels;
  pos.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const VertexId v = keep[i];
    if (v >= g.n()) throw std::invalid_argument("induced_subgraph: vertex out of range");
    if (old_to_new[v] != NONE) throw std::invalid_argument("induced_subgraph: duplicate vertex");
    old_to_new[v] = static_cast<VertexId>(i);
    pos.push_back(g.position(v));
    if (g.has_labels()) labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (old_to_new[u] != NONE && old_to_new[v] != NONE) {
      edges.emplace_back(old_to_new[u], old_to_new[v]);
    }
  }
  return Subgraph{SpatialGraph(std::move(pos), std::move(edges), std::move(labels)),
                  std::vector<VertexId>(keep.begin(), keep.end())};
}

Subgraph trim_top_degree(const SpatialGraph& g, std::uint32_t k) {
  std::vector<VertexId> order(g.n());
  std::iota(order.begin(), order.end(), VertexId{0});
  // Highest degree first; at equal degree the lower id is removed first.
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    const auto da = g.degree(a), db = g.degree(b);
    if (da != db) return da > db;
    return a < b;
  });
  const std::size_t drop = std::min<std::size_t>(k, g.n());
  std::vector<bool> removed(g.n(), false);
  for (std::size_t i = 0; i < drop; ++i) removed[order[i]] = true;
  std::vector<VertexId> keep;
  keep.reserve(g.n() - drop);
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (!removed[v]) keep.push_back(static_cast<VertexId>(v));
  }
  return induced_subgraph(g, keep);
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

void write_graph_csv(const SpatialGraph& g, const std::string& vertices_path,
                     const std::string& edges_path) {
  std::ofstream vout(vertices_path);
  if (!vout) throw DataError("cannot write " + vertices_path);
  vout << "id,x,y,z,label\n";
  for (std::size_t v = 0; v < g.n(); ++v) {
    const std::string& lab = g.label(static_cast<VertexId>(v));
    if (lab.find(',') != std::string::npos) {
      throw DataError("label contains a comma: " + lab);
    }
    const Position& p = g.position(static_cast<VertexId>(v));
    vout << v << ',' << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << fmt_double(p.z)
         << ',' << lab << '\n';
  }
  std::ofstream eout(edges_path);
  if (!eout) throw DataError("cannot write " + edges_path);
  eout << "src,dst\n";
  for (const auto& [u, v] : g.edges()) eout << u << ',' << v << '\n';
}

SpatialGraph load_graph_csv(const std::string& vertices_path, const std::string& edges_path) {
  const auto vlines = read_lines(vertices_path);
  if (vlines.empty() || csv::strip(vlines[0]) != "id,x,y,z,label") {
    throw DataError(vertices_path + ":1: expected header 'id,x,y,z,label'");
  }
  const std::size_t n = vlines.size() - 1;
  std::vector<Position> pos(n);
  std::vector<std::string> labels(n);
  std::vector<bool> seen(n, false);
  bool any_label = false;
  for (std::size_t i = 1; i < vlines.size(); ++i) {
    if (csv::strip(vlines[i]).empty()) {
      throw DataError(vertices_path + ":" + std::to_string(i + 1) + ": blank line");
    }
    const auto f = csv::split(vlines[i]);
    if (f.size() != 5) {
      throw DataError(vertices_path + ":" + std::to_string(i + 1) +
                      ": expected 5 fields, got " + std::to_string(f.size()));
    }
    const std::uint64_t id = csv::parse_u64(f[0], vertices_path, i + 1);
    if (id >= n || seen[id]) {
      throw DataError(vertices_path + ":" + std::to_string(i + 1) +
                      ": vertex ids must be 0..n-1, each exactly once");
    }
    seen[id] = true;
    pos[id] = Position{csv::parse_double(f[1], vertices_path, i + 1),
                       csv::parse_double(f[2], vertices_path, i + 1),
                       csv::parse_double(f[3], vertices_path, i + 1)};
    labels[id] = std::string(csv::strip(f[4]));
    if (!labels[id].empty()) any_label = true;
  }
  const auto elines = read_lines(edges_path);
  if (elines.empty() || csv::strip(elines[0]) != "src,dst") {
    throw DataError(edges_path + ":1: expected header 'src,dst'");
  }
  std::vector<Edge> edges;
  edges.reserve(elines.size() - 1);
  for (std::size_t i = 1; i < elines.size(); ++i) {
    if (csv::strip(elines[i]).empty()) {
      throw DataError(edges_path + ":" + std::to_string(i + 1) + ": blank line");
    }
    const auto f = csv::split(elines[i]);
    if (f.size() != 2) {
      throw DataError(edges_path + ":" + std::to_string(i + 1) + ": expected 2 fields");
    }
    const std::uint64_t u = csv::parse_u64(f[0], edges_path, i + 1);
    const std::uint64_t v = csv::parse_u64(f[1], edges_path, i + 1);
    if (u >= n || v >= n) {
      throw DataError(edges_path + ":" + std::to_string(i + 1) + ": endpoint out of range");
    }
    Edge e{static_cast<VertexId>(u), static_cast<VertexId>(v)};
    if (e.first > e.second) std::swap(e.first, e.second);
    edges.push_back(e);
  }
  {
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw DataError(edges_path + ": duplicate edge " + std::to_string(dup->first) + "," +
                      std::to_string(dup->second));
    }
  }
  if (!any_label) labels.clear();
  return SpatialGraph(std::move(pos), std::move(edges), std::move(labels));
}

}  // namespace geocl
