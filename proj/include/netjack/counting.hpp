#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "netjack/graph.hpp"
#include "netjack/pattern.hpp"

namespace netjack {

/// Copy count of a pattern and, per node, the number of copies containing it.
///
/// Since every copy has p vertices, sum(per_node) == p * total.
struct node_counts {
  count_t total = 0;
  std::vector<count_t> per_node;
};

/// How a copy S on vertex set V(S) is matched against G[V(S)].
enum class match_mode {
  containment, ///< S ⊆ G[V(S)]: extra edges allowed
  induced,     ///< S == G[V(S)]: exact match
};

/// Number of edges incident to each node (trivially the degrees).
inline node_counts edge_counts(const graph& g) {
  node_counts c;
  c.total = g.num_edges();
  c.per_node.resize(g.num_nodes());
  for (node_id i = 0; i < g.num_nodes(); ++i) c.per_node[i] = g.degree(i);
  return c;
}

namespace detail {

/// Calls fn(i, j, |N(i) ∩ N(j)|) for every edge with i < j, in (i, j) order.
///
/// Dense graphs use adjacency bitsets (popcount of n/64 words per edge);
/// otherwise each row of i is marked once and the rows of its neighbors are
/// scanned against the marks. Both give the merge count of common_neighbor_count.
template <class Fn>
void for_each_edge_closure(const graph& g, Fn&& fn) {
  const std::size_t n = g.num_nodes();
  if (n == 0 || g.num_edges() == 0) return;
  const std::size_t words = (n + 63) / 64;
  const double mean_degree = 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n);
  constexpr std::size_t bitset_budget = std::size_t{1} << 24; // words, i.e. 128 MiB

  if (static_cast<double>(words) <= mean_degree && n * words <= bitset_budget) {
    std::vector<std::uint64_t> bits(n * words, 0);
    for (node_id i = 0; i < n; ++i) {
      std::uint64_t* row = bits.data() + std::size_t{i} * words;
      for (node_id j : g.neighbors(i)) row[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    for (node_id i = 0; i < n; ++i) {
      const std::uint64_t* a = bits.data() + std::size_t{i} * words;
      for (node_id j : g.neighbors(i)) {
        if (j <= i) continue;
        const std::uint64_t* b = bits.data() + std::size_t{j} * words;
        count_t shared = 0;
        for (std::size_t w = 0; w < words; ++w) shared += static_cast<count_t>(std::popcount(a[w] & b[w]));
        fn(i, j, shared);
      }
    }
    return;
  }

  std::vector<std::uint8_t> mark(n, 0);
  for (node_id i = 0; i < n; ++i) {
    const auto row = g.neighbors(i);
    for (node_id k : row) mark[k] = 1;
    for (node_id j : row) {
      if (j <= i) continue;
      count_t shared = 0;
      for (node_id k : g.neighbors(j)) shared += mark[k];
      fn(i, j, shared);
    }
    for (node_id k : row) mark[k] = 0;
  }
}

} // namespace detail

/// Triangles via common-neighbor counts of each edge: an edge (i, j) closes
/// |N(i) ∩ N(j)| triangles, and each triangle at i is seen through both of
/// its other vertices.
inline node_counts triangle_counts(const graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<count_t> twice(n, 0);
  count_t edge_closures = 0;
  detail::for_each_edge_closure(g, [&](node_id i, node_id j, count_t shared) {
    twice[i] += shared;
    twice[j] += shared;
    edge_closures += shared;
  });
  node_counts c;
  c.total = edge_closures / 3;
  c.per_node.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.per_node[i] = twice[i] / 2;
  return c;
}

inline count_t triangle_total(const graph& g) {
  count_t edge_closures = 0;
  detail::for_each_edge_closure(g, [&](node_id, node_id, count_t shared) { edge_closures += shared; });
  return edge_closures / 3;
}

/// Two-stars (paths of length 2, not necessarily induced). Node i lies in the
/// C(d_i, 2) stars it centers plus d_j - 1 stars for each neighbor j.
inline node_counts two_star_counts(const graph& g) {
  const std::size_t n = g.num_nodes();
  node_counts c;
  c.per_node.resize(n);
  for (node_id i = 0; i < n; ++i) {
    const count_t d = g.degree(i);
    const count_t centered = d >= 2 ? d * (d - 1) / 2 : 0;
    count_t as_leaf = 0;
    for (node_id j : g.neighbors(i)) as_leaf += g.degree(j) - 1;
    c.total += centered;
    c.per_node[i] = centered + as_leaf;
  }
  return c;
}

inline count_t two_star_total(const graph& g) {
  count_t total = 0;
  for (node_id i = 0; i < g.num_nodes(); ++i) {
    const count_t d = g.degree(i);
    if (d >= 2) total += d * (d - 1) / 2;
  }
  return total;
}

namespace detail {

/// Backtracking enumerator of injective maps from a connected pattern into g.
/// Each copy of the pattern is reached exactly |Aut(R)| times.
class embedding_counter {
public:
  embedding_counter(const graph& g, const pattern& r, match_mode mode, bool per_node)
      : g_(g), mode_(mode), per_node_(per_node), p_(r.vertices()) {
    // Visit pattern vertices in BFS order so each one after the first has a placed neighbor.
    std::vector<int> order{0};
    std::vector<bool> seen(p_, false);
    seen[0] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (std::size_t v = 0; v < p_; ++v) {
        if (!seen[v] && r.adjacent(order[head], static_cast<int>(v))) {
          seen[v] = true;
          order.push_back(static_cast<int>(v));
        }
      }
    }
    if (order.size() != p_) throw argument_error("pattern must be connected");

    anchor_.assign(p_, -1);
    linked_.resize(p_);
    unlinked_.resize(p_);
    for (std::size_t k = 1; k < p_; ++k) {
      for (std::size_t t = 0; t < k; ++t) {
        if (r.adjacent(order[k], order[t])) {
          if (anchor_[k] < 0) {
            anchor_[k] = static_cast<int>(t);
          } else {
            linked_[k].push_back(static_cast<int>(t));
          }
        } else {
          unlinked_[k].push_back(static_cast<int>(t));
        }
      }
    }
    image_.assign(p_, 0);
    used_.assign(g.num_nodes(), 0);
    if (per_node_) node_maps_.assign(g.num_nodes(), 0);
  }

  count_t run() {
    for (node_id v = 0; v < g_.num_nodes(); ++v) {
      image_[0] = v;
      used_[v] = 1;
      extend(1);
      used_[v] = 0;
    }
    return maps_;
  }

  const std::vector<count_t>& node_maps() const noexcept { return node_maps_; }

private:
  void extend(std::size_t k) {
    if (k == p_) {
      ++maps_;
      if (per_node_) {
        for (node_id v : image_) ++node_maps_[v];
      }
      return;
    }
    for (node_id cand : g_.neighbors(image_[static_cast<std::size_t>(anchor_[k])])) {
      if (used_[cand]) continue;
      bool ok = true;
      for (int t : linked_[k]) {
        if (!g_.has_edge(cand, image_[static_cast<std::size_t>(t)])) {
          ok = false;
          break;
        }
      }
      if (ok && mode_ == match_mode::induced) {
        for (int t : unlinked_[k]) {
          if (g_.has_edge(cand, image_[static_cast<std::size_t>(t)])) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      image_[k] = cand;
      used_[cand] = 1;
      extend(k + 1);
      used_[cand] = 0;
    }
  }

  const graph& g_;
  match_mode mode_;
  bool per_node_;
  std::size_t p_;
  std::vector<int> anchor_;
  std::vector<std::vector<int>> linked_;
  std::vector<std::vector<int>> unlinked_;
  std::vector<node_id> image_;
  std::vector<char> used_;
  std::vector<count_t> node_maps_;
  count_t maps_ = 0;
};

} // namespace detail

/// Copies of `r` in `g` by backtracking over embeddings.
inline node_counts embedding_counts(const graph& g, const pattern& r, match_mode mode, bool per_node = true) {
  detail::embedding_counter counter(g, r, mode, per_node);
  const count_t maps = counter.run();
  const count_t aut = r.automorphisms();
  node_counts c;
  c.total = maps / aut;
  if (per_node) {
    c.per_node = counter.node_maps();
    for (auto& v : c.per_node) v /= aut;
  }
  return c;
}

/// Copies of `r` in `g` under `mode`, with per-node participation.
/// Closed forms cover edges, two-stars, triangles and star containment.
inline node_counts pattern_counts(const graph& g, const pattern& r, match_mode mode) {
  switch (r.kind()) {
  case pattern_kind::edge:
    return edge_counts(g);
  case pattern_kind::triangle:
    return triangle_counts(g);
  case pattern_kind::two_star:
    if (mode == match_mode::containment) return two_star_counts(g);
    {
      // An induced two-star is a two-star not closed into a triangle; each
      // triangle through a node holds three two-stars through it.
      node_counts c = two_star_counts(g);
      const node_counts t = triangle_counts(g);
      c.total -= 3 * t.total;
      for (std::size_t i = 0; i < c.per_node.size(); ++i) c.per_node[i] -= 3 * t.per_node[i];
      return c;
    }
  default:
    break;
  }
  if (r.kind() == pattern_kind::star && mode == match_mode::containment && r.edges() >= 2) {
    const std::size_t k = r.edges();
    const auto choose = [](count_t n, std::size_t kk) -> count_t {
      if (n < kk) return 0;
      count_t out = 1;
      for (std::size_t t = 1; t <= kk; ++t) out = out * (n - kk + t) / t;
      return out;
    };
    node_counts c;
    c.per_node.resize(g.num_nodes());
    for (node_id i = 0; i < g.num_nodes(); ++i) {
      const count_t centered = choose(g.degree(i), k);
      c.total += centered;
      count_t as_leaf = 0;
      for (node_id j : g.neighbors(i)) as_leaf += choose(g.degree(j) - 1, k - 1);
      c.per_node[i] = centered + as_leaf;
    }
    return c;
  }
  return embedding_counts(g, r, mode);
}

/// Copy count only.
inline count_t pattern_total(const graph& g, const pattern& r, match_mode mode) {
  switch (r.kind()) {
  case pattern_kind::edge: return g.num_edges();
  case pattern_kind::triangle: return triangle_total(g);
  case pattern_kind::two_star:
    return mode == match_mode::containment ? two_star_total(g) : two_star_total(g) - 3 * triangle_total(g);
  default: break;
  }
  if (r.kind() == pattern_kind::star && mode == match_mode::containment && r.edges() >= 2) {
    return pattern_counts(g, r, mode).total;
  }
  return embedding_counts(g, r, mode, false).total;
}

} // namespace netjack
