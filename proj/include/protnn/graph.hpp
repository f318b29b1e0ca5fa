// Residue contact graphs: two residues are adjacent when their C-alpha
// distance is below or equal to the threshold delta.

#ifndef PROTNN_GRAPH_HPP_
#define PROTNN_GRAPH_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "protnn/pdb.hpp"

namespace protnn {

struct GraphBuildParams {
  double delta = 7.0;  // contact threshold, angstroms
};

// Labeled undirected graph. Nodes are indexed 0..n-1 in residue order;
// edges are stored both as a sorted (i<j) edge list and as per-node
// neighbor lists. No self-loops, no duplicates.
class ProteinGraph {
 public:
  ProteinGraph() = default;
  ProteinGraph(std::string structure_id, std::vector<std::string> labels,
               std::vector<std::pair<int, int>> edges);

  int node_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& structure_id() const { return structure_id_; }
  const std::vector<std::string>& node_labels() const { return labels_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int u) const { return adjacency_[u]; }
  int degree(int u) const { return static_cast<int>(adjacency_[u].size()); }
  bool has_edge(int u, int v) const;

 private:
  std::string structure_id_;
  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> edges_;       // sorted, i < j
  std::vector<std::vector<int>> adjacency_;      // sorted neighbor lists
};

// Throws empty_structure when the record has no residues.
ProteinGraph build_graph(const StructureRecord& record,
                         const GraphBuildParams& params);

struct GraphStats {
  int nodes = 0;
  int edges = 0;
  int components = 0;
};

GraphStats graph_stats(const ProteinGraph& g);

// Debug dump: `#nodes <n>`, node lines `index label`, edge lines `i j`
// ascending. read_graph_dump is its inverse.
void dump_graph(const ProteinGraph& g, std::ostream& out);
ProteinGraph read_graph_dump(std::istream& in);

}  // namespace protnn

#endif
