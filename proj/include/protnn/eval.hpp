// Experiment harness: leave-one-out accuracy, distance-measure and k
// sweeps, recursive feature elimination, and attribute scoring across
// experiment grids.

#ifndef PROTNN_EVAL_HPP_
#define PROTNN_EVAL_HPP_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "protnn/classifier.hpp"

namespace protnn {

struct LooResult {
  std::string dataset_id;
  double accuracy = 0;  // correct count / N, exactly
  struct QueryOutcome {
    std::string query_id;
    std::string true_class;
    std::string predicted_class;
  };
  std::vector<QueryOutcome> per_query;
  int k = 0;
  std::string measure;
  std::vector<int> mask;  // attribute indices; empty = all
};

// Each row in turn becomes the query against the remaining rows, with
// normalization stats (and std-euclidean variances) recomputed on the
// remainder so nothing leaks from the held-out row.
// Throws too_few_rows for fewer than 2 rows.
LooResult loo_accuracy(const ReferenceDb& db, int k, const DistanceMeasure& m,
                       const FeatureMask& mask = {},
                       const std::string& dataset_id = "");

// One LOO run per measure, in the given order.
std::vector<LooResult> sweep_measures(const ReferenceDb& db, int k,
                                      std::span<const DistanceMeasure> measures,
                                      const std::string& dataset_id = "");

// One LOO run per k in [k_min, k_max].
std::vector<LooResult> sweep_k(const ReferenceDb& db, const DistanceMeasure& m,
                               int k_min, int k_max,
                               const std::string& dataset_id = "");

struct RfeResult {
  std::vector<int> selected_mask;  // ascending attribute indices
  struct Step {
    int removed_attribute;
    double accuracy_after_removal;
  };
  std::vector<Step> elimination_trace;
  double initial_accuracy = 0;
  double final_accuracy = 0;
  int loo_evaluations = 0;  // baseline run + every candidate evaluation
};

// Greedy backward elimination: each step drops the attribute whose removal
// maximizes LOO accuracy, but only on a strict improvement; stops otherwise
// or when one attribute remains. Candidate ties go to the lowest index.
RfeResult rfe(const ReferenceDb& db, int k, const DistanceMeasure& m);

struct AttributeScoreTable {
  std::array<int, kNumAttributes> count{};     // optimal-subset appearances
  std::array<double, kNumAttributes> score{};  // count / experiments
  std::array<int, kNumAttributes> rank{};      // 1 = most selected
  int experiments = 0;
};

// Runs rfe over every (dataset, measure, k) cell and tallies how often each
// attribute survives into the optimal subset.
AttributeScoreTable score_attributes(std::span<const ReferenceDb> datasets,
                                     std::span<const DistanceMeasure> measures,
                                     std::span<const int> ks);

}  // namespace protnn

#endif
