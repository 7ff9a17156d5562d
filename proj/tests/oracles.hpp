#pragma once

// Brute-force reference computations used only by the tests. None of these
// share code paths with the library beyond the graph container itself.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "netjack/graph.hpp"
#include "netjack/pattern.hpp"

namespace oracle {

using netjack::count_t;
using netjack::graph;
using netjack::node_id;

/// G(n, p) from std::mt19937_64, independent of the library sampler.
inline graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<netjack::edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({static_cast<node_id>(i), static_cast<node_id>(j)});
  return graph::from_edges(n, edges);
}

inline graph complete_graph(std::size_t n) {
  std::vector<netjack::edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({static_cast<node_id>(i), static_cast<node_id>(j)});
  return graph::from_edges(n, edges);
}

inline graph from_pairs(std::size_t n, std::initializer_list<std::pair<node_id, node_id>> pairs) {
  std::vector<netjack::edge> edges;
  for (const auto& [a, b] : pairs) edges.push_back({a, b});
  return graph::from_edges(n, edges);
}

inline std::vector<std::vector<char>> adjacency_matrix(const graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (node_id i = 0; i < n; ++i)
    for (node_id j : g.neighbors(i)) a[i][j] = 1;
  return a;
}

inline count_t common_neighbors(const graph& g, node_id i, node_id j) {
  std::set<node_id> a(g.neighbors(i).begin(), g.neighbors(i).end());
  std::set<node_id> b(g.neighbors(j).begin(), g.neighbors(j).end());
  std::vector<node_id> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.size();
}

/// Edges of the subgraph induced by `nodes`, relabeled by rank, as (u < v) pairs.
inline std::set<std::pair<node_id, node_id>> induced_edges(const graph& g, std::vector<node_id> nodes) {
  std::sort(nodes.begin(), nodes.end());
  std::set<std::pair<node_id, node_id>> out;
  for (const auto& e : g.edge_list()) {
    const auto iu = std::lower_bound(nodes.begin(), nodes.end(), e.u);
    const auto iv = std::lower_bound(nodes.begin(), nodes.end(), e.v);
    if (iu != nodes.end() && *iu == e.u && iv != nodes.end() && *iv == e.v) {
      out.insert({static_cast<node_id>(iu - nodes.begin()), static_cast<node_id>(iv - nodes.begin())});
    }
  }
  return out;
}

inline std::set<std::pair<node_id, node_id>> edge_set(const graph& g) {
  std::set<std::pair<node_id, node_id>> out;
  for (const auto& e : g.edge_list()) out.insert({e.u, e.v});
  return out;
}

inline count_t triangles(const graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = g.num_nodes();
  count_t t = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) t += a[i][j] && a[j][k] && a[k][i];
  return t;
}

/// sum over centers i and leaf pairs j < k (both != i) of A_ij A_ik.
inline count_t two_stars(const graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = g.num_nodes();
  count_t w = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (j != i && k != i) w += a[i][j] && a[i][k];
  return w;
}

/// Number of labeled copies S ~ R on p-subsets of g with S ⊆ G[V(S)]
/// (containment) or S == G[V(S)] (induced). Enumerates every p-subset and,
/// within it, every distinct relabeling of R. O(n^p p!), keep n small.
inline count_t labeled_copies(const graph& g, const netjack::pattern& r, bool induced) {
  const std::size_t n = g.num_nodes();
  const std::size_t p = r.vertices();
  const auto a = adjacency_matrix(g);
  if (n < p) return 0;

  // Distinct edge sets of R's isomorphs on positions 0..p-1, as p x p bitmasks.
  std::set<std::uint64_t> isomorphs;
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::uint64_t mask = 0;
    for (auto [x, y] : r.edge_pairs()) {
      int u = perm[x], v = perm[y];
      if (u > v) std::swap(u, v);
      mask |= std::uint64_t{1} << (u * 8 + v);
    }
    isomorphs.insert(mask);
  } while (std::next_permutation(perm.begin(), perm.end()));

  count_t total = 0;
  std::vector<std::size_t> pick(p);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::uint64_t present = 0;
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = x + 1; y < p; ++y)
        if (a[pick[x]][pick[y]]) present |= std::uint64_t{1} << (x * 8 + y);
    for (std::uint64_t s : isomorphs) {
      if (induced ? present == s : (present & s) == s) ++total;
    }
    // next combination
    std::size_t i = p;
    while (i > 0 && pick[i - 1] == n - p + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < p; ++j) pick[j] = pick[j - 1] + 1;
  }
  return total;
}

/// All eigenvalues of the adjacency matrix (dense self-adjoint solver).
inline std::vector<double> dense_eigenvalues(const graph& g) {
  const std::size_t n = g.num_nodes();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (node_id i = 0; i < n; ++i)
    for (node_id j : g.neighbors(i)) m(i, j) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
  // Magnitudes of a pair ±λ agree only to rounding; runs of equal magnitude go positive first.
  for (std::size_t lo = 0; lo < out.size();) {
    std::size_t hi = lo + 1;
    while (hi < out.size() && std::abs(std::abs(out[hi]) - std::abs(out[lo])) <= 1e-9 * std::max(1.0, std::abs(out[lo]))) ++hi;
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi), std::greater<>());
    lo = hi;
  }
  return out;
}

/// Random permutation of 0..n-1.
inline std::vector<node_id> permutation(std::size_t n, std::uint64_t seed) {
  std::vector<node_id> perm(n);
  std::iota(perm.begin(), perm.end(), node_id{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

} // namespace oracle
