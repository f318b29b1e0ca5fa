#include "protnn/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "protnn/error.hpp"

namespace protnn {

std::string_view DistanceMeasure::name() const {
  return kMeasureNames[static_cast<int>(kind)];
}

DistanceMeasure measure_from_name(std::string_view name, double minkowski_p) {
  if (!(minkowski_p >= 1.0) || !std::isfinite(minkowski_p))
    fail(errc::bad_format, "minkowski order must be finite and >= 1");
  for (size_t i = 0; i < kMeasureNames.size(); ++i)
    if (kMeasureNames[i] == name) {
      DistanceMeasure m;
      m.kind = static_cast<Measure>(i);
      m.minkowski_p = minkowski_p;
      return m;
    }
  fail(errc::bad_format, "unknown distance measure: " + std::string(name));
}

namespace {

bool equal_vectors(std::span<const double> x, std::span<const double> y) {
  return std::equal(x.begin(), x.end(), y.begin());
}

double cosine_distance(std::span<const double> x, std::span<const double> y) {
  if (equal_vectors(x, y)) return 0.0;
  double dot = 0, nx = 0, ny = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  if (nx == 0 || ny == 0) return 1.0;  // both-zero handled by the fast path
  double d = 1.0 - dot / std::sqrt(nx * ny);
  return std::clamp(d, 0.0, 2.0);
}

double correlation_distance(std::span<const double> x,
                            std::span<const double> y) {
  if (equal_vectors(x, y)) return 0.0;
  size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double dot = 0, vx = 0, vy = 0;
  for (size_t i = 0; i < n; ++i) {
    double a = x[i] - mx, b = y[i] - my;
    dot += a * b;
    vx += a * a;
    vy += b * b;
  }
  if (vx == 0 && vy == 0) return 0.0;
  if (vx == 0 || vy == 0) return 1.0;
  double d = 1.0 - dot / std::sqrt(vx * vy);
  return std::clamp(d, 0.0, 2.0);
}

}  // namespace

double distance(const DistanceMeasure& m, std::span<const double> x,
                std::span<const double> y) {
  if (x.size() != y.size() || x.empty())
    fail(errc::dimension_mismatch,
         "distance: vectors must have equal dimension >= 1");

  switch (m.kind) {
    case Measure::euclidean: {
      double s = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - y[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Measure::std_euclidean: {
      if (m.feature_variances.empty())
        fail(errc::missing_variances,
             "std-euclidean requires per-attribute variances");
      if (m.feature_variances.size() != x.size())
        fail(errc::dimension_mismatch,
             "std-euclidean variance vector has wrong dimension");
      double s = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        double v = m.feature_variances[i];
        if (v == 0) continue;
        double d = x[i] - y[i];
        s += d * d / v;
      }
      return std::sqrt(s);
    }
    case Measure::cosine:
      return cosine_distance(x, y);
    case Measure::manhattan: {
      double s = 0;
      for (size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
      return s;
    }
    case Measure::correlation:
      return correlation_distance(x, y);
    case Measure::minkowski: {
      if (!(m.minkowski_p >= 1.0) || !std::isfinite(m.minkowski_p))
        fail(errc::bad_format, "minkowski order must be finite and >= 1");
      double s = 0;
      for (size_t i = 0; i < x.size(); ++i)
        s += std::pow(std::abs(x[i] - y[i]), m.minkowski_p);
      return std::pow(s, 1.0 / m.minkowski_p);
    }
    case Measure::chebyshev: {
      double s = 0;
      for (size_t i = 0; i < x.size(); ++i)
        s = std::max(s, std::abs(x[i] - y[i]));
      return s;
    }
    case Measure::canberra: {
      double s = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        double num = std::abs(x[i] - y[i]);
        double den = std::abs(x[i]) + std::abs(y[i]);
        if (den != 0) s += num / den;
      }
      return s;
    }
    case Measure::braycurtis: {
      double num = 0, den = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        num += std::abs(x[i] - y[i]);
        den += std::abs(x[i] + y[i]);
      }
      return den == 0 ? 0.0 : num / den;
    }
  }
  fail(errc::bad_format, "unreachable: unknown measure kind");
}

}  // namespace protnn
