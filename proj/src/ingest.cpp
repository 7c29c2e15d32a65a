#include "geocl/ingest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "csv_util.hpp"
#include "geocl/errors.hpp"

namespace geocl {

namespace {

constexpr const char* kHeader =
    "pre_id,post_id,pre_x,pre_y,pre_z,post_x,post_y,post_z,named_pre,named_post";

bool parse_flag(std::string_view field, const std::string& file, std::size_t line) {
  field = csv::strip(field);
  if (field == "0" || field == "false") return false;
  if (field == "1" || field == "true") return true;
  throw DataError(file + ":" + std::to_string(line) + ": bad boolean field '" +
                  std::string(field) + "'");
}

}  // namespace

ConnectomeDataset parse_synapses(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line) || csv::strip(line) != kHeader) {
    throw DataError(name + ":1: expected header '" + std::string(kHeader) + "'");
  }
  ConnectomeDataset ds;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (csv::strip(line).empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 10) {
      throw DataError(name + ":" + std::to_string(lineno) + ": expected 10 fields, got " +
                      std::to_string(f.size()));
    }
    SynapseRecord rec;
    rec.pre_neuron = std::string(csv::strip(f[0]));
    rec.post_neuron = std::string(csv::strip(f[1]));
    if (rec.pre_neuron.empty() || rec.post_neuron.empty()) {
      throw DataError(name + ":" + std::to_string(lineno) + ": empty neuron id");
    }
    rec.pre_pos = Position{csv::parse_double(f[2], name, lineno),
                           csv::parse_double(f[3], name, lineno),
                           csv::parse_double(f[4], name, lineno)};
    rec.post_pos = Position{csv::parse_double(f[5], name, lineno),
                            csv::parse_double(f[6], name, lineno),
                            csv::parse_double(f[7], name, lineno)};
    if (parse_flag(f[8], name, lineno)) ds.named_ids.insert(rec.pre_neuron);
    if (parse_flag(f[9], name, lineno)) ds.named_ids.insert(rec.post_neuron);
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

ConnectomeDataset parse_synapses_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_synapses(in, path);
}

std::map<std::string, Position> centroid_positions(const ConnectomeDataset& ds) {
  struct Acc {
    double x = 0, y = 0, z = 0;
    std::size_t count = 0;
  };
  std::map<std::string, Acc> acc;
  for (const SynapseRecord& r : ds.records) {
    Acc& pre = acc[r.pre_neuron];
    pre.x += r.pre_pos.x;
    pre.y += r.pre_pos.y;
    pre.z += r.pre_pos.z;
    ++pre.count;
    Acc& post = acc[r.post_neuron];
    post.x += r.post_pos.x;
    post.y += r.post_pos.y;
    post.z += r.post_pos.z;
    ++post.count;
  }
  std::map<std::string, Position> out;
  for (const auto& [id, a] : acc) {
    const double c = static_cast<double>(a.count);
    out[id] = Position{a.x / c, a.y / c, a.z / c};
  }
  return out;
}

SpatialGraph build_connectome_graph(const ConnectomeDataset& ds) {
  const auto centroids = centroid_positions(ds);
  // Vertex ids follow first appearance in the record stream (pre before post
  // within a record), which makes graph construction deterministic for a
  // given file.
  std::unordered_map<std::string, VertexId> index;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& id) {
    const auto [it, inserted] = index.emplace(id, static_cast<VertexId>(labels.size()));
    if (inserted) labels.push_back(id);
    return it->second;
  };
  std::set<Edge> edge_set;
  for (const SynapseRecord& r : ds.records) {
    VertexId u = intern(r.pre_neuron);
    VertexId v = intern(r.post_neuron);
    if (u > v) std::swap(u, v);
    edge_set.insert(Edge{u, v});
  }
  std::vector<Position> pos(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) pos[v] = centroids.at(labels[v]);
  return SpatialGraph(std::move(pos), std::vector<Edge>(edge_set.begin(), edge_set.end()),
                      std::move(labels));
}

ReferenceGraphs reference_graphs(const ConnectomeDataset& ds) {
  ReferenceGraphs out;
  out.full = build_connectome_graph(ds);
  std::vector<VertexId> named_vertices;
  for (VertexId v = 0; v < out.full.n(); ++v) {
    if (ds.named_ids.count(out.full.label(v)) != 0) named_vertices.push_back(v);
  }
  if (named_vertices.empty()) throw DataError("dataset has no named neurons");
  out.named = induced_subgraph(out.full, named_vertices);
  out.full_minus1 = trim_top_degree(out.full, 1);
  out.named_minus2 = trim_top_degree(out.named.graph, 2);
  // Rebase named_minus2's ids onto the full graph for traceability.
  for (VertexId& v : out.named_minus2.old_ids) v = out.named.old_ids[v];
  return out;
}

}  // namespace geocl
