// Embedding of a labeled contact graph into a fixed-length vector of
// structural and topological attributes (see attributes.hpp for the list).

#ifndef PROTNN_DESCRIPTORS_HPP_
#define PROTNN_DESCRIPTORS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "protnn/attributes.hpp"
#include "protnn/graph.hpp"

namespace protnn {

struct FeatureVector {
  std::vector<double> values;  // values[i] holds attribute A(i+1)
  std::string structure_id;
  std::string label;           // class label, empty when unlabeled
};

// Full real spectrum of the 0/1 adjacency matrix, sorted descending.
struct Spectrum {
  std::vector<double> eigenvalues;
  double distinctness_tolerance = 0;  // 1e-6 * max(1, spectral radius)

  double spectral_radius() const;
  // Number of eigenvalue groups under single-linkage merging of values
  // closer than the tolerance.
  int distinct_count() const;
};

// Per-node shortest-path summaries from BFS (unit edge weights).
// Unreachable pairs are excluded: eccentricity and distance_sum cover
// reachable nodes only, and an isolated node has eccentricity 0.
struct PathSummary {
  std::vector<int> eccentricity;
  std::vector<std::int64_t> distance_sum;
  std::vector<int> reachable_count;  // reachable nodes other than self
};

PathSummary all_pairs_shortest_paths(const ProteinGraph& g);

// Throws empty_graph for n = 0 and eigensolver_failure when the
// decomposition does not meet the trace/energy sanity bounds.
Spectrum eigen_spectrum(const ProteinGraph& g);

// All attributes of the registry, in order. Throws as eigen_spectrum.
FeatureVector compute_features(const ProteinGraph& g);

}  // namespace protnn

#endif
