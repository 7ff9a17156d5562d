#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netjack/error.hpp"

namespace netjack {

using node_id = std::uint32_t;
using count_t = std::uint64_t;

struct edge {
  node_id u;
  node_id v;
};

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Nodes are 0..n-1. Both directions of every edge are stored and each
/// neighbor list is strictly increasing.
class graph {
public:
  graph() : offsets_(1, 0) {}

  /// Builds a simple graph on `n` nodes. Self-loops and repeated edges (in
  /// either orientation) are discarded; `dropped`, when given, receives how many.
  static graph from_edges(std::size_t n, std::span<const edge> edges, std::size_t* dropped = nullptr) {
    if (n > std::numeric_limits<node_id>::max()) {
      throw argument_error("node count exceeds the supported id range");
    }
    graph g;
    g.offsets_.assign(n + 1, 0);
    std::size_t loops = 0;
    for (const auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw argument_error("edge endpoint out of range");
      }
      if (e.u == e.v) {
        ++loops;
        continue;
      }
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      g.offsets_[i + 1] += g.offsets_[i];
    }
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
      if (e.u == e.v) continue;
      g.targets_[cursor[e.u]++] = e.v;
      g.targets_[cursor[e.v]++] = e.u;
    }

    // Sort each row, then compact away duplicates.
    std::size_t write = 0;
    std::size_t row_begin = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row_end = g.offsets_[i + 1];
      auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(row_begin);
      auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(row_end);
      std::sort(first, last);
      last = std::unique(first, last);
      const std::size_t kept = static_cast<std::size_t>(last - first);
      if (write != row_begin) std::copy(first, last, g.targets_.begin() + static_cast<std::ptrdiff_t>(write));
      g.offsets_[i] = write;
      write += kept;
      row_begin = row_end;
    }
    g.offsets_[n] = write;
    g.targets_.resize(write);
    g.targets_.shrink_to_fit();

    if (dropped != nullptr) {
      *dropped = loops + (edges.size() - loops - g.num_edges());
    }
    return g;
  }

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::size_t degree(node_id i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

  std::span<const node_id> neighbors(node_id i) const noexcept {
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  bool has_edge(node_id i, node_id j) const noexcept {
    const auto row = neighbors(i);
    return std::binary_search(row.begin(), row.end(), j);
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(num_nodes());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = degree(static_cast<node_id>(i));
    return d;
  }

  /// Edges with u < v, in lexicographic order.
  std::vector<edge> edge_list() const {
    std::vector<edge> out;
    out.reserve(num_edges());
    for (node_id i = 0; i < num_nodes(); ++i) {
      for (node_id j : neighbors(i)) {
        if (i < j) out.push_back({i, j});
      }
    }
    return out;
  }

  /// Checks symmetry, simplicity, sortedness and the degree/edge-count identity.
  bool is_valid() const {
    const std::size_t n = num_nodes();
    if (offsets_.front() != 0 || offsets_.back() != targets_.size() || targets_.size() % 2 != 0) {
      return false;
    }
    for (node_id i = 0; i < n; ++i) {
      const auto row = neighbors(i);
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] >= n || row[k] == i) return false;
        if (k > 0 && row[k - 1] >= row[k]) return false;
        if (!has_edge(row[k], i)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const graph& a, const graph& b) = default;

private:
  friend graph induced_subgraph_impl(const graph&, std::span<const node_id>, std::span<const node_id>);

  std::vector<std::size_t> offsets_;
  std::vector<node_id> targets_;
};

/// Order-preserving selection of nodes together with its old-to-new relabeling.
class node_subset {
public:
  static constexpr node_id absent = std::numeric_limits<node_id>::max();

  /// `nodes` may be in any order; duplicates or out-of-range ids are rejected.
  static node_subset from_nodes(std::size_t n, std::vector<node_id> nodes) {
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
      throw argument_error("node subset contains duplicates");
    }
    if (!nodes.empty() && nodes.back() >= n) {
      throw argument_error("node subset id out of range");
    }
    node_subset s;
    s.mapping_.assign(n, absent);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      s.mapping_[nodes[k]] = static_cast<node_id>(k);
    }
    s.kept_ = std::move(nodes);
    return s;
  }

  const std::vector<node_id>& kept() const noexcept { return kept_; }
  const std::vector<node_id>& mapping() const noexcept { return mapping_; }
  std::size_t size() const noexcept { return kept_.size(); }
  std::size_t universe() const noexcept { return mapping_.size(); }
  bool contains(node_id old_id) const noexcept { return mapping_[old_id] != absent; }

private:
  std::vector<node_id> kept_;
  std::vector<node_id> mapping_;
};

inline graph induced_subgraph_impl(const graph& g, std::span<const node_id> kept, std::span<const node_id> mapping) {
  graph out;
  out.offsets_.assign(kept.size() + 1, 0);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    for (node_id v : g.neighbors(kept[k])) {
      const node_id mapped = mapping[v];
      if (mapped != node_subset::absent) out.targets_.push_back(mapped);
    }
    out.offsets_[k + 1] = out.targets_.size();
  }
  return out;
}

/// Graph induced by `subset`, relabeled to 0..|subset|-1 in the subset's order.
inline graph induced_subgraph(const graph& g, const node_subset& subset) {
  if (subset.universe() != g.num_nodes()) {
    throw argument_error("node subset was built for a graph of a different size");
  }
  return induced_subgraph_impl(g, subset.kept(), subset.mapping());
}

/// All nodes except `i`.
inline node_subset leave_one_out(const graph& g, node_id i) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw degenerate_input_error("leave-one-out needs at least 2 nodes");
  if (i >= n) throw argument_error("node id out of range");
  std::vector<node_id> nodes;
  nodes.reserve(n - 1);
  for (node_id k = 0; k < n; ++k) {
    if (k != i) nodes.push_back(k);
  }
  return node_subset::from_nodes(n, std::move(nodes));
}

/// |N(i) ∩ N(j)| by merging the two sorted neighbor lists.
inline count_t common_neighbor_count(const graph& g, node_id i, node_id j) {
  if (i >= g.num_nodes() || j >= g.num_nodes()) throw argument_error("node id out of range");
  if (i == j) throw argument_error("common_neighbor_count needs two distinct nodes");
  const auto a = g.neighbors(i);
  const auto b = g.neighbors(j);
  count_t shared = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x] < b[y]) {
      ++x;
    } else if (b[y] < a[x]) {
      ++y;
    } else {
      ++shared;
      ++x;
      ++y;
    }
  }
  return shared;
}

/// Applies `perm` (old id -> new id) to every node of `g`.
inline graph relabel(const graph& g, std::span<const node_id> perm) {
  if (perm.size() != g.num_nodes()) throw argument_error("permutation size mismatch");
  std::vector<edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& e : g.edge_list()) edges.push_back({perm[e.u], perm[e.v]});
  return graph::from_edges(g.num_nodes(), edges);
}

// ---------------------------------------------------------------------------
// Edge-list text format

struct edge_list_options {
  bool one_indexed = false;
  std::optional<std::size_t> nodes; ///< universe override; must cover every id
};

struct edge_list_result {
  graph g;
  std::size_t dropped_lines = 0; ///< self-loops plus duplicate edges
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<std::int64_t> parse_int(std::string_view token) {
  std::int64_t value = 0;
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) return std::nullopt;
  return value;
}

} // namespace detail

/// Reads a whitespace-separated edge list. Lines starting with '#' are
/// comments, except that `# nodes=K` declares the node universe.
inline edge_list_result load_edge_list(std::istream& in, const edge_list_options& options = {}) {
  std::vector<edge> edges;
  std::optional<std::size_t> header_nodes;
  std::int64_t max_id = -1;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      view = detail::trim(view.substr(1));
      if (view.starts_with("nodes=")) {
        const auto k = detail::parse_int(detail::trim(view.substr(6)));
        if (!k || *k < 0) throw parse_error(line_no, "bad node count header");
        header_nodes = static_cast<std::size_t>(*k);
      }
      continue;
    }

    std::int64_t ids[2] = {0, 0};
    std::size_t tokens = 0;
    while (!view.empty()) {
      const auto end = view.find_first_of(" \t");
      const std::string_view token = view.substr(0, end);
      if (tokens == 2) throw parse_error(line_no, "expected exactly two node ids");
      const auto parsed = detail::parse_int(token);
      if (!parsed) throw parse_error(line_no, "malformed node id '" + std::string(token) + "'");
      ids[tokens++] = *parsed;
      view = end == std::string_view::npos ? std::string_view{} : detail::trim(view.substr(end));
    }
    if (tokens != 2) throw parse_error(line_no, "expected exactly two node ids");

    for (auto& id : ids) {
      if (options.one_indexed) --id;
      if (id < 0) throw input_error("line " + std::to_string(line_no) + ": negative node id after normalization");
      if (id >= static_cast<std::int64_t>(std::numeric_limits<node_id>::max())) {
        throw input_error("line " + std::to_string(line_no) + ": node id too large");
      }
      max_id = std::max(max_id, id);
    }
    edges.push_back({static_cast<node_id>(ids[0]), static_cast<node_id>(ids[1])});
  }

  std::size_t n = static_cast<std::size_t>(max_id + 1);
  const auto declared = options.nodes ? options.nodes : header_nodes;
  if (declared) {
    if (*declared < n) {
      throw input_error("declared node count " + std::to_string(*declared) + " is smaller than max id + 1 = " +
                        std::to_string(n));
    }
    n = *declared;
  }

  edge_list_result result;
  result.g = graph::from_edges(n, edges, &result.dropped_lines);
  return result;
}

/// Writes `g` in the format read by load_edge_list, 0-indexed, with a node-count header.
inline void write_edge_list(std::ostream& out, const graph& g) {
  out << "# nodes=" << g.num_nodes() << '\n';
  for (const auto& e : g.edge_list()) out << e.u << ' ' << e.v << '\n';
}

} // namespace netjack
