#include "protnn/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/naive.hpp"

using namespace protnn;
using namespace protnn::testing;

namespace {

const double kSqrt2 = std::sqrt(2.0);
// -(2/3)log2(2/3) - (1/3)log2(1/3) = log2(3) - 2/3
const double kEntropy21 = std::log2(3.0) - 2.0 / 3.0;

void check_features(const FeatureVector& fv, const std::vector<double>& want,
                    double tol = 1e-9, double spectral_tol = 1e-8) {
  REQUIRE(fv.values.size() == 18);
  for (int i = 0; i < 18; ++i) {
    double t = (i >= 11 && i <= 14) ? spectral_tol : tol;
    INFO("attribute A", i + 1);
    CHECK(std::abs(fv.values[i] - want[i]) <= t);
  }
}

ProteinGraph permuted(const ProteinGraph& g, const std::vector<int>& perm) {
  std::vector<std::string> labels(g.node_count());
  for (int i = 0; i < g.node_count(); ++i)
    labels[perm[i]] = g.node_labels()[i];
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return ProteinGraph(g.structure_id(), std::move(labels), std::move(edges));
}

}  // namespace

TEST_CASE("K3 features match the closed-form values") {
  ProteinGraph k3("k3", {"ALA", "ALA", "ALA"}, {{0, 1}, {1, 2}, {0, 2}});
  FeatureVector fv = compute_features(k3);
  std::vector<double> want = {3, 3, 2, 1, 1, 1, 1, 1, 1,
                              1, 0, 2, 2, -1, 6, 0, 0, 0};
  check_features(fv, want);
}

TEST_CASE("P3 features match the closed-form values") {
  ProteinGraph p3("p3", {"ALA", "GLY", "ALA"}, {{0, 1}, {1, 2}});
  FeatureVector fv = compute_features(p3);
  std::vector<double> want = {3,       2,       4.0 / 3, 2.0 / 3, 0, 5.0 / 3,
                              2,       1,       7.0 / 9, 1.0 / 3, 2.0 / 3, 3,
                              kSqrt2,  0,       4,       1,       1, kEntropy21};
  check_features(fv, want);
}

TEST_CASE("single-node graph hits every degenerate rule") {
  ProteinGraph one("one", {"GLY"}, {});
  FeatureVector fv = compute_features(one);
  std::vector<double> want = {1, 0, 0, 0, 0, 0, 0, 0, 0,
                              1, 0, 1, 0, 0, 0, 0, 0, 0};
  check_features(fv, want);
}

TEST_CASE("edgeless 3-node graph") {
  ProteinGraph g("e3", {"ALA", "ALA", "ALA"}, {});
  Spectrum s = eigen_spectrum(g);
  REQUIRE(s.eigenvalues.size() == 3);
  for (double ev : s.eigenvalues) CHECK(std::abs(ev) <= 1e-8);

  FeatureVector fv = compute_features(g);
  std::vector<double> want = {3, 0, 0, 0, 0, 0, 0, 0, 0,
                              1, 0, 1, 0, 0, 0, 0, 0, 0};
  check_features(fv, want);
}

TEST_CASE("eigen_spectrum closed forms") {
  ProteinGraph k3("k3", {"A", "A", "A"}, {{0, 1}, {1, 2}, {0, 2}});
  Spectrum s = eigen_spectrum(k3);
  CHECK(std::abs(s.eigenvalues[0] - 2) <= 1e-8);
  CHECK(std::abs(s.eigenvalues[1] + 1) <= 1e-8);
  CHECK(std::abs(s.eigenvalues[2] + 1) <= 1e-8);
  CHECK(s.distinct_count() == 2);

  ProteinGraph p3("p3", {"A", "B", "A"}, {{0, 1}, {1, 2}});
  s = eigen_spectrum(p3);
  CHECK(std::abs(s.eigenvalues[0] - kSqrt2) <= 1e-8);
  CHECK(std::abs(s.eigenvalues[1]) <= 1e-8);
  CHECK(std::abs(s.eigenvalues[2] + kSqrt2) <= 1e-8);
  CHECK(s.distinct_count() == 3);
}

TEST_CASE("shortest-path summary examples") {
  ProteinGraph p3("p3", {"A", "B", "A"}, {{0, 1}, {1, 2}});
  PathSummary ps = all_pairs_shortest_paths(p3);
  CHECK(ps.eccentricity == std::vector<int>{2, 1, 2});
  CHECK(ps.distance_sum == std::vector<std::int64_t>{3, 2, 3});

  ProteinGraph disjoint("d", {"A", "A", "B", "B"}, {{0, 1}, {2, 3}});
  ps = all_pairs_shortest_paths(disjoint);
  CHECK(ps.eccentricity == std::vector<int>{1, 1, 1, 1});
  CHECK(ps.reachable_count == std::vector<int>{1, 1, 1, 1});

  ProteinGraph k3("k3", {"A", "A", "A"}, {{0, 1}, {1, 2}, {0, 2}});
  ps = all_pairs_shortest_paths(k3);
  CHECK(ps.eccentricity == std::vector<int>{1, 1, 1});
}

TEST_CASE("all attributes match the naive oracle on random graphs") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> size(1, 12);
  const double probs[] = {0.0, 0.15, 0.4, 0.8, 1.0};
  for (int trial = 0; trial < 50; ++trial) {
    int n = size(rng);
    double p = probs[trial % 5];
    ProteinGraph g = random_graph(rng, n, p, 3);
    FeatureVector fv = compute_features(g);
    std::vector<double> want = naive_features(g);
    for (int i = 0; i < 18; ++i) {
      INFO("trial ", trial, " n=", n, " p=", p, " attribute A", i + 1);
      CHECK(std::abs(fv.values[i] - want[i]) <= 1e-6);
    }
  }
}

TEST_CASE("spectral trace and energy identities") {
  std::mt19937 rng(103);
  std::uniform_int_distribution<int> size(1, 50);
  const double probs[] = {0.1, 0.5, 0.9};
  for (int trial = 0; trial < 40; ++trial) {
    ProteinGraph g = random_graph(rng, size(rng), probs[trial % 3]);
    Spectrum s = eigen_spectrum(g);
    double sum = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0);
    CHECK(std::abs(sum) <= g.node_count() * 1e-8);
    double energy = 0;
    for (double ev : s.eigenvalues) energy += ev * ev;
    double want = 2.0 * g.edge_count();
    CHECK(std::abs(energy - want) <= 1e-6 * std::max(1.0, want));
    CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
  }
}

TEST_CASE("eccentricity and spectral-radius orderings") {
  std::mt19937 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + int(rng() % 30);
    ProteinGraph g = random_graph(rng, n, 0.35);
    FeatureVector fv = compute_features(g);
    double a6 = fv.values[5], a7 = fv.values[6], a8 = fv.values[7];
    CHECK(a8 <= a6 + 1e-12);
    CHECK(a6 <= a7 + 1e-12);
    if (graph_stats(g).components == 1) {
      CHECK(a7 <= 2 * a8 + 1e-12);
      int max_deg = 0;
      for (int u = 0; u < n; ++u) max_deg = std::max(max_deg, g.degree(u));
      CHECK(fv.values[2] <= fv.values[12] + 1e-9);   // mean degree <= rho
      CHECK(fv.values[12] <= max_deg + 1e-9);
    }
  }
}

TEST_CASE("features are invariant to node order and label renaming") {
  std::mt19937 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + int(rng() % 14);
    ProteinGraph g = random_graph(rng, n, 0.4, 3);
    FeatureVector base = compute_features(g);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FeatureVector shuffled = compute_features(permuted(g, perm));
    for (int i = 0; i < 18; ++i)
      CHECK(std::abs(base.values[i] - shuffled.values[i]) <= 1e-9);

    std::vector<std::string> renamed(g.node_labels());
    std::map<std::string, std::string> mapping = {
        {"ALA", "XXX"}, {"GLY", "YYY"}, {"SER", "ZZZ"}};
    for (auto& l : renamed) l = mapping.at(l);
    ProteinGraph relabeled(g.structure_id(), std::move(renamed),
                           std::vector<std::pair<int, int>>(g.edges()));
    FeatureVector re = compute_features(relabeled);
    for (int i = 0; i < 18; ++i)
      CHECK(std::abs(base.values[i] - re.values[i]) <= 1e-9);
  }
}

TEST_CASE("feature-vector range invariants hold on random graphs") {
  std::mt19937 rng(113);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + int(rng() % 25);
    ProteinGraph g = random_graph(rng, n, 0.3, 5);
    FeatureVector fv = compute_features(g);
    CHECK(fv.values[0] >= 1);
    CHECK(fv.values[1] >= 0);
    if (n >= 2) {
      CHECK(fv.values[3] >= 0);
      CHECK(fv.values[3] <= 1);
    }
    for (int idx : {4, 9, 10, 16}) {
      CHECK(fv.values[idx] >= 0);
      CHECK(fv.values[idx] <= 1);
    }
    for (double v : fv.values) CHECK(std::isfinite(v));
  }
}

TEST_CASE("empty graph is rejected") {
  ProteinGraph g("none", {}, {});
  CHECK_THROWS_AS(compute_features(g), Error);
  CHECK_THROWS_AS(eigen_spectrum(g), Error);
}
