#include "protnn/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "protnn/error.hpp"

namespace protnn {

std::vector<int> canonical_mask(const std::vector<int>& mask) {
  if (mask.empty())
    fail(errc::invalid_mask, "feature mask must name at least one attribute");
  std::vector<int> out = mask;
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    fail(errc::invalid_mask, "feature mask lists an attribute twice");
  if (out.front() < 0 || out.back() >= kNumAttributes)
    fail(errc::invalid_mask, "feature mask index out of range");
  return out;
}

std::vector<int> parse_mask(const std::string& spec) {
  std::vector<int> mask;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      fail(errc::invalid_mask, "empty attribute name in mask");
    int idx = attribute_index(item.substr(b, e - b + 1));
    if (idx < 0)
      fail(errc::invalid_mask, "unknown attribute in mask: " + item);
    mask.push_back(idx);
  }
  return canonical_mask(mask);
}

namespace {

std::vector<double> project(std::span<const double> values,
                            const std::vector<int>& mask) {
  std::vector<double> out;
  out.reserve(mask.size());
  for (int j : mask) out.push_back(values[j]);
  return out;
}

}  // namespace

Prediction classify(const FeatureVector& query, const ReferenceDb& db, int k,
                    const DistanceMeasure& m, const FeatureMask& mask) {
  if (db.rows().empty())
    fail(errc::empty_db, "classify: reference database is empty");
  if (k < 1) fail(errc::bad_format, "classify: k must be >= 1");
  if (query.values.size() != static_cast<size_t>(kNumAttributes))
    fail(errc::dimension_mismatch,
         query.structure_id + ": query vector has wrong dimension");

  std::vector<int> use_mask =
      mask ? canonical_mask(*mask) : std::vector<int>{};
  if (use_mask.empty()) {
    use_mask.resize(kNumAttributes);
    std::iota(use_mask.begin(), use_mask.end(), 0);
  }

  DistanceMeasure measure = m;
  if (measure.kind == Measure::std_euclidean)
    measure.feature_variances = project(db.normalized_variances(), use_mask);

  std::vector<double> q = project(normalize(query.values, db.stats()), use_mask);

  const auto& rows = db.rows();
  std::vector<std::pair<double, size_t>> dist(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> r = project(normalize(rows[i].values, db.stats()), use_mask);
    dist[i] = {distance(measure, q, r), i};
  }

  // (distance, structure_id) is a strict total order: ids are unique.
  auto nearer = [&](const std::pair<double, size_t>& a,
                    const std::pair<double, size_t>& b) {
    if (a.first != b.first) return a.first < b.first;
    return rows[a.second].structure_id < rows[b.second].structure_id;
  };
  size_t take = std::min<size_t>(k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + take, dist.end(), nearer);

  Prediction pred;
  pred.query_id = query.structure_id;
  pred.measure = std::string(measure.name());
  pred.k = k;
  pred.neighbors.reserve(take);
  for (size_t i = 0; i < take; ++i) {
    const FeatureVector& row = rows[dist[i].second];
    pred.neighbors.push_back({row.structure_id, row.label, dist[i].first});
    ++pred.votes[row.label];
  }

  // Majority vote; ties go to the class with the nearest member, then to
  // the lexicographically smallest class.
  int best_votes = 0;
  for (const auto& [cls, n] : pred.votes) best_votes = std::max(best_votes, n);
  std::string winner;
  double winner_best_dist = std::numeric_limits<double>::infinity();
  for (const auto& [cls, n] : pred.votes) {
    if (n != best_votes) continue;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Neighbor& nb : pred.neighbors)
      if (nb.label == cls) {
        best_dist = nb.distance;
        break;  // neighbors are distance-sorted
      }
    if (winner.empty() || best_dist < winner_best_dist ||
        (best_dist == winner_best_dist && cls < winner)) {
      winner = cls;
      winner_best_dist = best_dist;
    }
  }
  pred.predicted_class = winner;
  return pred;
}

std::vector<Prediction> classify_batch(const std::vector<FeatureVector>& queries,
                                       const ReferenceDb& db, int k,
                                       const DistanceMeasure& m,
                                       const FeatureMask& mask) {
  std::vector<Prediction> out;
  out.reserve(queries.size());
  for (const FeatureVector& q : queries) {
    try {
      out.push_back(classify(q, db, k, m, mask));
    } catch (const Error& e) {
      throw Error(e.code(), "query " + q.structure_id + ": " + e.what());
    }
  }
  return out;
}

}  // namespace protnn
