// The nine pairwise vector distance measures, invocable by name.
// Cosine, correlation and braycurtis are dissimilarities, not metrics;
// degenerate inputs follow fixed total-function rules (see distance()).

#ifndef PROTNN_METRICS_HPP_
#define PROTNN_METRICS_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace protnn {

enum class Measure {
  euclidean,
  std_euclidean,
  cosine,
  manhattan,
  correlation,
  minkowski,
  chebyshev,
  canberra,
  braycurtis,
};

inline constexpr std::array<std::string_view, 9> kMeasureNames = {
    "euclidean", "std-euclidean", "cosine",    "manhattan", "correlation",
    "minkowski", "chebyshev",     "canberra",  "braycurtis"};

struct DistanceMeasure {
  Measure kind = Measure::euclidean;
  double minkowski_p = 2.0;                // used by minkowski only
  std::vector<double> feature_variances;   // used by std-euclidean only

  std::string_view name() const;
};

// Throws bad_format for an unknown name.
DistanceMeasure measure_from_name(std::string_view name,
                                  double minkowski_p = 2.0);

// Degenerate-case rules: std-euclidean skips zero-variance terms; cosine
// against a zero vector is 1 (0 when both are zero); correlation against a
// zero-variance vector is 1 (0 when both are); canberra 0/0 terms add 0;
// braycurtis with zero denominator is 0. d(x,x) = 0 holds for all nine.
// Throws dimension_mismatch and missing_variances.
double distance(const DistanceMeasure& m, std::span<const double> x,
                std::span<const double> y);

}  // namespace protnn

#endif
