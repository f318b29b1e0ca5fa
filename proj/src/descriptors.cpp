#include "protnn/descriptors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "protnn/error.hpp"

namespace protnn {

double Spectrum::spectral_radius() const {
  double r = 0;
  for (double ev : eigenvalues) r = std::max(r, std::abs(ev));
  return r;
}

int Spectrum::distinct_count() const {
  if (eigenvalues.empty()) return 0;
  int groups = 1;
  for (size_t i = 1; i < eigenvalues.size(); ++i)
    if (eigenvalues[i - 1] - eigenvalues[i] > distinctness_tolerance) ++groups;
  return groups;
}

PathSummary all_pairs_shortest_paths(const ProteinGraph& g) {
  int n = g.node_count();
  PathSummary out;
  out.eccentricity.assign(n, 0);
  out.distance_sum.assign(n, 0);
  out.reachable_count.assign(n, 0);

  std::vector<int> dist(n);
  std::deque<int> queue;
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    queue.clear();
    queue.push_back(src);
    int ecc = 0;
    std::int64_t sum = 0;
    int reached = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u)) {
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        ecc = std::max(ecc, dist[v]);
        sum += dist[v];
        ++reached;
        queue.push_back(v);
      }
    }
    out.eccentricity[src] = ecc;
    out.distance_sum[src] = sum;
    out.reachable_count[src] = reached;
  }
  return out;
}

Spectrum eigen_spectrum(const ProteinGraph& g) {
  int n = g.node_count();
  if (n == 0) fail(errc::empty_graph, "eigen_spectrum: graph has no nodes");

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    adj(u, v) = 1.0;
    adj(v, u) = 1.0;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(errc::eigensolver_failure,
         g.structure_id() + ": eigensolver did not converge");

  Spectrum s;
  s.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + n);
  std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
  s.distinctness_tolerance = 1e-6 * std::max(1.0, s.spectral_radius());

  // Trace and energy identities double as convergence checks.
  double sum = 0, sum_sq = 0;
  for (double ev : s.eigenvalues) {
    sum += ev;
    sum_sq += ev * ev;
  }
  double energy_expected = 2.0 * g.edge_count();
  if (std::abs(sum) > n * 1e-8 ||
      std::abs(sum_sq - energy_expected) >
          1e-6 * std::max(1.0, energy_expected))
    fail(errc::eigensolver_failure,
         g.structure_id() + ": spectrum fails trace/energy sanity bounds");
  return s;
}

namespace {

// e_u = number of connected neighbor pairs of u, via a marker array.
std::int64_t connected_neighbor_pairs(const ProteinGraph& g, int u,
                                      std::vector<char>& mark) {
  for (int a : g.neighbors(u)) mark[a] = 1;
  std::int64_t twice = 0;
  for (int a : g.neighbors(u))
    for (int b : g.neighbors(a))
      if (mark[b]) ++twice;
  for (int a : g.neighbors(u)) mark[a] = 0;
  return twice / 2;
}

}  // namespace

FeatureVector compute_features(const ProteinGraph& g) {
  int n = g.node_count();
  if (n == 0) fail(errc::empty_graph, "compute_features: graph has no nodes");
  int m = g.edge_count();

  FeatureVector fv;
  fv.structure_id = g.structure_id();
  std::vector<double>& a = fv.values;
  a.assign(kNumAttributes, 0.0);

  a[0] = n;
  a[1] = m;
  a[2] = 2.0 * m / n;
  a[3] = n > 1 ? 2.0 * m / (static_cast<double>(n) * (n - 1)) : 0.0;

  // A5: average clustering coefficient, c(u) = 0 for deg(u) < 2.
  {
    std::vector<char> mark(n, 0);
    double total = 0;
    for (int u = 0; u < n; ++u) {
      double k = g.degree(u);
      if (k < 2) continue;
      total += 2.0 * connected_neighbor_pairs(g, u, mark) / (k * (k - 1));
    }
    a[4] = total / n;
  }

  // A6-A10: shortest-path attributes over reachable nodes.
  {
    PathSummary paths = all_pairs_shortest_paths(g);
    int ecc_max = 0, ecc_min = paths.eccentricity[0];
    double ecc_sum = 0, closeness_sum = 0;
    for (int u = 0; u < n; ++u) {
      int e = paths.eccentricity[u];
      ecc_sum += e;
      ecc_max = std::max(ecc_max, e);
      ecc_min = std::min(ecc_min, e);
      if (paths.reachable_count[u] > 0)
        closeness_sum += static_cast<double>(paths.reachable_count[u]) /
                         static_cast<double>(paths.distance_sum[u]);
    }
    a[5] = ecc_sum / n;
    a[6] = ecc_max;
    a[7] = ecc_min;
    a[8] = closeness_sum / n;
    int central = 0;
    for (int e : paths.eccentricity)
      if (e == ecc_min) ++central;
    a[9] = static_cast<double>(central) / n;
  }

  {
    int endpoints = 0;
    for (int u = 0; u < n; ++u)
      if (g.degree(u) == 1) ++endpoints;
    a[10] = static_cast<double>(endpoints) / n;
  }

  // A12-A15: adjacency spectrum.
  {
    Spectrum s = eigen_spectrum(g);
    a[11] = s.distinct_count();
    a[12] = s.spectral_radius();
    a[13] = n >= 2 ? s.eigenvalues[1] : s.eigenvalues[0];
    double energy = 0;
    for (double ev : s.eigenvalues) energy += ev * ev;
    a[14] = energy;
  }

  // A16-A18: label attributes, on interned label ids.
  {
    std::unordered_map<std::string, int> ids;
    std::vector<int> label_of(n);
    for (int u = 0; u < n; ++u)
      label_of[u] = ids.emplace(g.node_labels()[u], ids.size()).first->second;

    double impurity_sum = 0;
    std::vector<int> nbr_labels;
    for (int u = 0; u < n; ++u) {
      nbr_labels.clear();
      for (int v : g.neighbors(u))
        if (label_of[v] != label_of[u]) nbr_labels.push_back(label_of[v]);
      std::sort(nbr_labels.begin(), nbr_labels.end());
      nbr_labels.erase(std::unique(nbr_labels.begin(), nbr_labels.end()),
                       nbr_labels.end());
      impurity_sum += nbr_labels.size();
    }
    a[15] = impurity_sum / n;

    if (m > 0) {
      int impure = 0;
      for (const auto& [u, v] : g.edges())
        if (label_of[u] != label_of[v]) ++impure;
      a[16] = static_cast<double>(impure) / m;
    }

    std::vector<int> counts(ids.size(), 0);
    for (int id : label_of) ++counts[id];
    double entropy = 0;
    for (int c : counts) {
      double p = static_cast<double>(c) / n;
      entropy -= p * std::log2(p);
    }
    a[17] = entropy == 0 ? 0.0 : entropy;  // normalize -0
  }

  return fv;
}

}  // namespace protnn
