// k-nearest-neighbor majority vote of a query vector against the reference
// database. Queries are min-max normalized with the database's stats; for
// std-euclidean the database's normalized-space variances are used.

#ifndef PROTNN_CLASSIFIER_HPP_
#define PROTNN_CLASSIFIER_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "protnn/descriptors.hpp"
#include "protnn/metrics.hpp"
#include "protnn/reference_db.hpp"

namespace protnn {

struct Neighbor {
  std::string structure_id;
  std::string label;
  double distance = 0;
};

struct Prediction {
  std::string query_id;
  std::vector<Neighbor> neighbors;  // ascending by (distance, structure_id)
  std::map<std::string, int> votes;
  std::string predicted_class;
  std::string measure;
  int k = 0;
};

// Attribute subset for masked distances: indices into the attribute
// registry, any order, no duplicates. std::nullopt means all attributes.
using FeatureMask = std::optional<std::vector<int>>;

// Deterministic tie rules: neighbors are ordered by (distance, id); a vote
// tie goes to the tied class with the nearest member, then to the
// lexicographically smallest class name.
// Throws empty_db, invalid_mask, dimension_mismatch.
Prediction classify(const FeatureVector& query, const ReferenceDb& db, int k,
                    const DistanceMeasure& m, const FeatureMask& mask = {});

std::vector<Prediction> classify_batch(const std::vector<FeatureVector>& queries,
                                       const ReferenceDb& db, int k,
                                       const DistanceMeasure& m,
                                       const FeatureMask& mask = {});

// Validated ascending copy of a mask. Throws invalid_mask.
std::vector<int> canonical_mask(const std::vector<int>& mask);

// Parses "A15,A17" style lists. Throws invalid_mask on unknown names.
std::vector<int> parse_mask(const std::string& spec);

}  // namespace protnn

#endif
