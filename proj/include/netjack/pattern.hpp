#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netjack/error.hpp"
#include "netjack/graph.hpp"

namespace netjack {

enum class pattern_kind { edge, two_star, triangle, path, star, cycle };

/// A small connected subgraph R on vertices 0..p-1.
class pattern {
public:
  static constexpr std::size_t max_vertices = 8;

  static pattern edge() { return pattern(pattern_kind::edge, 1, {{0, 1}}); }
  static pattern two_star() { return pattern(pattern_kind::two_star, 2, {{0, 1}, {0, 2}}); }
  static pattern triangle() { return pattern(pattern_kind::triangle, 3, {{0, 1}, {1, 2}, {0, 2}}); }

  /// Path with k edges.
  static pattern path(std::size_t k) {
    if (k < 1 || k + 1 > max_vertices) throw argument_error("path length out of range");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < k; ++i) edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return pattern(pattern_kind::path, k, std::move(edges));
  }

  /// Star with k leaves; vertex 0 is the center.
  static pattern star(std::size_t k) {
    if (k < 1 || k + 1 > max_vertices) throw argument_error("star size out of range");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 1; i <= k; ++i) edges.emplace_back(0, static_cast<int>(i));
    return pattern(pattern_kind::star, k, std::move(edges));
  }

  /// Cycle on p vertices.
  static pattern cycle(std::size_t p) {
    if (p < 3 || p > max_vertices) throw argument_error("cycle length out of range");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < p; ++i) edges.emplace_back(static_cast<int>(i), static_cast<int>((i + 1) % p));
    return pattern(pattern_kind::cycle, p, std::move(edges));
  }

  /// Accepts edge, twostar, triangle, path<k>, star<k>, cycle<p>.
  static pattern parse(std::string_view name) {
    if (name == "edge") return edge();
    if (name == "twostar" || name == "two-star") return two_star();
    if (name == "triangle") return triangle();
    const auto number = [&](std::string_view prefix) -> std::size_t {
      const auto digits = name.substr(prefix.size());
      const auto value = detail::parse_int(digits);
      if (!value || *value < 0) throw argument_error("bad pattern size in '" + std::string(name) + "'");
      return static_cast<std::size_t>(*value);
    };
    if (name.starts_with("path")) return path(number("path"));
    if (name.starts_with("star")) return star(number("star"));
    if (name.starts_with("cycle")) return cycle(number("cycle"));
    throw argument_error("unknown pattern '" + std::string(name) + "'");
  }

  pattern_kind kind() const noexcept { return kind_; }
  std::size_t vertices() const noexcept { return vertices_; }
  std::size_t edges() const noexcept { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edge_pairs() const noexcept { return edges_; }

  /// |Iso(R)|: number of distinct labeled graphs on the p vertices isomorphic to R.
  std::uint64_t iso_count() const noexcept { return iso_count_; }

  /// |Aut(R)| = p! / |Iso(R)|.
  std::uint64_t automorphisms() const noexcept { return automorphisms_; }

  bool adjacent(int a, int b) const noexcept {
    return std::find_if(edges_.begin(), edges_.end(), [&](const auto& e) {
             return (e.first == a && e.second == b) || (e.first == b && e.second == a);
           }) != edges_.end();
  }

  std::string name() const {
    switch (kind_) {
    case pattern_kind::edge: return "edge";
    case pattern_kind::two_star: return "twostar";
    case pattern_kind::triangle: return "triangle";
    case pattern_kind::path: return "path" + std::to_string(param_);
    case pattern_kind::star: return "star" + std::to_string(param_);
    case pattern_kind::cycle: return "cycle" + std::to_string(param_);
    }
    return {};
  }

  friend bool operator==(const pattern& a, const pattern& b) {
    return a.kind_ == b.kind_ && a.param_ == b.param_;
  }

private:
  pattern(pattern_kind kind, std::size_t param, std::vector<std::pair<int, int>> edges)
      : kind_(kind), param_(param), edges_(std::move(edges)) {
    int top = 0;
    for (const auto& [a, b] : edges_) top = std::max({top, a, b});
    vertices_ = static_cast<std::size_t>(top) + 1;

    // Enumerate every relabeling and count the distinct edge sets produced.
    std::vector<int> perm(vertices_);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::uint64_t> images;
    std::uint64_t factorial = 0;
    do {
      ++factorial;
      std::uint64_t mask = 0;
      for (const auto& [a, b] : edges_) mask |= std::uint64_t{1} << pair_index(perm[a], perm[b]);
      images.insert(mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    iso_count_ = images.size();
    automorphisms_ = factorial / iso_count_;
  }

  static int pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    return a * static_cast<int>(max_vertices) + b;
  }

  pattern_kind kind_;
  std::size_t param_;
  std::vector<std::pair<int, int>> edges_;
  std::size_t vertices_ = 0;
  std::uint64_t iso_count_ = 0;
  std::uint64_t automorphisms_ = 0;
};

} // namespace netjack
