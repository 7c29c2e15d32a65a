#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "geocl/graph.hpp"

namespace geocl {

// One synapse-level record of the raw export.
struct SynapseRecord {
  std::string pre_neuron;
  std::string post_neuron;
  Position pre_pos;
  Position post_pos;
};

struct ConnectomeDataset {
  std::vector<SynapseRecord> records;
  std::set<std::string> named_ids;  // subset of neuron ids appearing in records
};

// Parse the canonical synapse CSV. Header:
//   pre_id,post_id,pre_x,pre_y,pre_z,post_x,post_y,post_z,named_pre,named_post
// named_* are 0/1. Malformed rows raise DataError with a 1-based line number.
// An empty body after the header is a valid empty dataset.
ConnectomeDataset parse_synapses(std::istream& in, const std::string& name = "<stream>");
ConnectomeDataset parse_synapses_file(const std::string& path);

// Arithmetic mean of every synapse endpoint a neuron participates in; a
// self-synapse contributes both its endpoints.
std::map<std::string, Position> centroid_positions(const ConnectomeDataset& ds);

// One vertex per distinct neuron id (first-appearance order), positioned at
// its centroid and labeled with the id; directions and multiplicities
// collapse to simple undirected edges, self-synapses to self-loops.
SpatialGraph build_connectome_graph(const ConnectomeDataset& ds);

struct ReferenceGraphs {
  SpatialGraph full;       // all neurons
  Subgraph named;          // induced on named neurons, of `full`
  Subgraph full_minus1;    // full with the top-degree vertex removed
  Subgraph named_minus2;   // named graph with its top-2 degree vertices removed
};

// Throws DataError when the dataset has no named neurons.
ReferenceGraphs reference_graphs(const ConnectomeDataset& ds);

}  // namespace geocl
