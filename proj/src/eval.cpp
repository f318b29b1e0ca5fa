#include "protnn/eval.hpp"

#include <algorithm>
#include <numeric>

#include "protnn/error.hpp"

namespace protnn {

namespace {

// Precomputed leave-one-out folds of one database. Fold i holds every row
// but i, with stats recomputed, exactly as ReferenceDb::without_row builds
// them, so cached and uncached runs give bit-identical results.
class LooFolds {
 public:
  explicit LooFolds(const ReferenceDb& db) : db_(&db) {
    if (db.rows().size() < 2)
      fail(errc::too_few_rows, "leave-one-out needs at least 2 rows");
    folds_.reserve(db.rows().size());
    for (size_t i = 0; i < db.rows().size(); ++i)
      folds_.push_back(db.without_row(i));
  }

  LooResult run(int k, const DistanceMeasure& m, const FeatureMask& mask,
                const std::string& dataset_id) const {
    LooResult res;
    res.dataset_id = dataset_id;
    res.k = k;
    res.measure = std::string(m.name());
    if (mask) res.mask = canonical_mask(*mask);

    int correct = 0;
    const auto& rows = db_->rows();
    res.per_query.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      Prediction p = classify(rows[i], folds_[i], k, m, mask);
      if (p.predicted_class == rows[i].label) ++correct;
      res.per_query.push_back(
          {rows[i].structure_id, rows[i].label, p.predicted_class});
    }
    res.accuracy =
        static_cast<double>(correct) / static_cast<double>(rows.size());
    return res;
  }

 private:
  const ReferenceDb* db_;
  std::vector<ReferenceDb> folds_;
};

std::vector<int> all_attributes() {
  std::vector<int> mask(kNumAttributes);
  std::iota(mask.begin(), mask.end(), 0);
  return mask;
}

RfeResult rfe_with_folds(const LooFolds& folds, int k,
                         const DistanceMeasure& m) {
  RfeResult res;
  std::vector<int> mask = all_attributes();
  double current = folds.run(k, m, mask, "").accuracy;
  res.initial_accuracy = current;
  res.loo_evaluations = 1;

  while (mask.size() > 1) {
    double best_acc = -1;
    int best_attr = -1;
    for (int attr : mask) {  // ascending, so strict > keeps the lowest index
      std::vector<int> candidate;
      candidate.reserve(mask.size() - 1);
      for (int a : mask)
        if (a != attr) candidate.push_back(a);
      double acc = folds.run(k, m, candidate, "").accuracy;
      ++res.loo_evaluations;
      if (acc > best_acc) {
        best_acc = acc;
        best_attr = attr;
      }
    }
    if (!(best_acc > current)) break;  // no strict enhancement left
    mask.erase(std::find(mask.begin(), mask.end(), best_attr));
    res.elimination_trace.push_back({best_attr, best_acc});
    current = best_acc;
  }

  res.selected_mask = mask;
  res.final_accuracy = current;
  return res;
}

}  // namespace

LooResult loo_accuracy(const ReferenceDb& db, int k, const DistanceMeasure& m,
                       const FeatureMask& mask,
                       const std::string& dataset_id) {
  return LooFolds(db).run(k, m, mask, dataset_id);
}

std::vector<LooResult> sweep_measures(const ReferenceDb& db, int k,
                                      std::span<const DistanceMeasure> measures,
                                      const std::string& dataset_id) {
  LooFolds folds(db);
  std::vector<LooResult> out;
  out.reserve(measures.size());
  for (const DistanceMeasure& m : measures)
    out.push_back(folds.run(k, m, {}, dataset_id));
  return out;
}

std::vector<LooResult> sweep_k(const ReferenceDb& db, const DistanceMeasure& m,
                               int k_min, int k_max,
                               const std::string& dataset_id) {
  if (k_min < 1 || k_max < k_min)
    fail(errc::bad_format, "sweep_k: need 1 <= k_min <= k_max");
  LooFolds folds(db);
  std::vector<LooResult> out;
  out.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k)
    out.push_back(folds.run(k, m, {}, dataset_id));
  return out;
}

RfeResult rfe(const ReferenceDb& db, int k, const DistanceMeasure& m) {
  return rfe_with_folds(LooFolds(db), k, m);
}

AttributeScoreTable score_attributes(std::span<const ReferenceDb> datasets,
                                     std::span<const DistanceMeasure> measures,
                                     std::span<const int> ks) {
  if (datasets.empty() || measures.empty() || ks.empty())
    fail(errc::bad_format,
         "score_attributes: need at least one dataset, measure and k");

  AttributeScoreTable table;
  for (const ReferenceDb& db : datasets) {
    LooFolds folds(db);
    for (const DistanceMeasure& m : measures)
      for (int k : ks) {
        RfeResult r = rfe_with_folds(folds, k, m);
        for (int attr : r.selected_mask) ++table.count[attr];
        ++table.experiments;
      }
  }
  for (int j = 0; j < kNumAttributes; ++j)
    table.score[j] =
        static_cast<double>(table.count[j]) / table.experiments;

  std::array<int, kNumAttributes> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return table.score[a] > table.score[b];  // score ties keep index order
  });
  for (int pos = 0; pos < kNumAttributes; ++pos)
    table.rank[order[pos]] = pos + 1;
  return table;
}

}  // namespace protnn
