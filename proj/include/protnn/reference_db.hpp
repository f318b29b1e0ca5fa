// The reference database of raw feature vectors with class labels.
// Vectors are stored raw; min-max normalization happens at query time from
// the stats kept here, so the database can grow incrementally without
// recomputing descriptors.

#ifndef PROTNN_REFERENCE_DB_HPP_
#define PROTNN_REFERENCE_DB_HPP_

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "protnn/descriptors.hpp"
#include "protnn/graph.hpp"
#include "protnn/pdb.hpp"

namespace protnn {

struct FeatureStats {
  std::vector<double> min, max, mean, variance;  // population, raw space
};

// Per-attribute population stats over all rows.
FeatureStats compute_stats(const std::vector<FeatureVector>& rows);

// (x - min) / (max - min) per attribute; 0 where max == min. Values outside
// the reference range map outside [0,1] — no clipping.
std::vector<double> normalize(std::span<const double> values,
                              const FeatureStats& stats);

struct BuildFailure {
  std::string path;
  std::string message;
};

class ReferenceDb {
 public:
  static constexpr int kFormatVersion = 1;

  // Wraps precomputed vectors (every row needs a label and a unique id).
  static ReferenceDb from_rows(std::vector<FeatureVector> rows, double delta);

  const std::vector<FeatureVector>& rows() const { return rows_; }
  const FeatureStats& stats() const { return stats_; }
  // Population variances of the min-max normalized rows; what std-euclidean
  // standardizes with.
  const std::vector<double>& normalized_variances() const {
    return normalized_variances_;
  }
  double delta() const { return delta_; }
  int version() const { return kFormatVersion; }
  const std::vector<std::string>& attribute_names() const {
    return attribute_names_;
  }
  bool contains(const std::string& structure_id) const {
    return id_index_.count(structure_id) > 0;
  }

  // Copy without row i, stats recomputed (leave-one-out view).
  ReferenceDb without_row(size_t i) const;

 private:
  friend ReferenceDb build_db(const std::vector<ManifestEntry>&,
                              const GraphBuildParams&,
                              std::vector<BuildFailure>*, int);
  friend void add_structures(ReferenceDb&, const std::vector<ManifestEntry>&,
                             const GraphBuildParams&,
                             std::vector<BuildFailure>*, int);
  friend ReferenceDb load_db(const std::string&);

  void append_row(FeatureVector row);  // throws duplicate_structure_id
  void recompute_stats();

  std::vector<FeatureVector> rows_;
  FeatureStats stats_;
  std::vector<double> normalized_variances_;
  double delta_ = 7.0;
  std::vector<std::string> attribute_names_;
  std::unordered_map<std::string, size_t> id_index_;
};

// Parses, graphs and embeds every manifest entry. Per-structure failures go
// to `failures` (when non-null); throws all_structures_failed if nothing
// parsed. `jobs` > 1 computes descriptors in parallel (row order is still
// manifest order).
ReferenceDb build_db(const std::vector<ManifestEntry>& manifest,
                     const GraphBuildParams& params,
                     std::vector<BuildFailure>* failures = nullptr,
                     int jobs = 1);

// Appends new structures; existing raw rows are untouched and only the
// stats are recomputed. Throws duplicate_structure_id before mutating.
void add_structures(ReferenceDb& db, const std::vector<ManifestEntry>& extra,
                    const GraphBuildParams& params,
                    std::vector<BuildFailure>* failures = nullptr,
                    int jobs = 1);

// Versioned text format: `#protnn-db v1`, `#delta=...`, `#attributes=...`,
// then CSV rows `structure_id,label,A1..A18` at 17 significant digits.
// Stats are recomputed on load, never stored. Saving is atomic
// (temp file + rename).
void save_db(const ReferenceDb& db, const std::string& path);
ReferenceDb load_db(const std::string& path);

}  // namespace protnn

#endif
