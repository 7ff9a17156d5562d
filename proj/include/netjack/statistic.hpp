#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netjack/counting.hpp"
#include "netjack/error.hpp"
#include "netjack/graph.hpp"
#include "netjack/pattern.hpp"
#include "netjack/spectral.hpp"

namespace netjack {

/// Sparsity normalizer: a known value, or the observed edge density of the full graph.
class rho_mode {
public:
  static rho_mode known(double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) throw argument_error("known rho must lie in (0, 1]");
    return rho_mode(rho);
  }
  static rho_mode plug_in() { return rho_mode(std::nullopt); }

  bool is_plug_in() const noexcept { return !value_; }
  double value() const { return value_.value(); }

private:
  explicit rho_mode(std::optional<double> v) : value_(v) {}
  std::optional<double> value_;
};

enum class stat_kind {
  edge_density,
  triangle_density,
  two_star_density,
  transitivity,
  pattern_p, ///< exact induced matches, |Iso(R)|-normalized
  pattern_q, ///< containment matches, |Iso(R)|-normalized
  eigenvalue,
};

/// A graph functional together with its normalization.
struct statistic {
  stat_kind kind = stat_kind::edge_density;
  std::optional<pattern> shape; ///< for pattern_p / pattern_q
  std::size_t eigen_index = 0;  ///< 1-based, for eigenvalue
  rho_mode rho = rho_mode::plug_in();

  static statistic edge_density(rho_mode r = rho_mode::plug_in()) { return {stat_kind::edge_density, {}, 0, r}; }
  static statistic triangle_density(rho_mode r = rho_mode::plug_in()) { return {stat_kind::triangle_density, {}, 0, r}; }
  static statistic two_star_density(rho_mode r = rho_mode::plug_in()) { return {stat_kind::two_star_density, {}, 0, r}; }
  static statistic transitivity(rho_mode r = rho_mode::plug_in()) { return {stat_kind::transitivity, {}, 0, r}; }
  static statistic pattern_p(pattern p, rho_mode r = rho_mode::plug_in()) { return {stat_kind::pattern_p, p, 0, r}; }
  static statistic pattern_q(pattern p, rho_mode r = rho_mode::plug_in()) { return {stat_kind::pattern_q, p, 0, r}; }
  static statistic eigenvalue(std::size_t k) {
    if (k < 1) throw argument_error("eigenvalue index must be >= 1");
    return {stat_kind::eigenvalue, {}, k, rho_mode::plug_in()};
  }

  /// CLI names: edge-density, triangle-density, twostar-density, transitivity,
  /// pattern-p:<name>, pattern-q:<name>, eigenvalue:<k>.
  static statistic parse(std::string_view name, rho_mode r = rho_mode::plug_in()) {
    statistic s;
    if (name == "edge-density") {
      s = edge_density(r);
    } else if (name == "triangle-density") {
      s = triangle_density(r);
    } else if (name == "twostar-density") {
      s = two_star_density(r);
    } else if (name == "transitivity") {
      s = transitivity(r);
    } else if (name.starts_with("pattern-p:")) {
      s = pattern_p(pattern::parse(name.substr(10)), r);
    } else if (name.starts_with("pattern-q:")) {
      s = pattern_q(pattern::parse(name.substr(10)), r);
    } else if (name.starts_with("eigenvalue:")) {
      const auto k = detail::parse_int(name.substr(11));
      if (!k || *k < 1) throw argument_error("bad eigenvalue index in '" + std::string(name) + "'");
      s = eigenvalue(static_cast<std::size_t>(*k));
    } else {
      throw argument_error("unknown statistic '" + std::string(name) + "'");
    }
    return s;
  }

  std::string name() const {
    switch (kind) {
    case stat_kind::edge_density: return "edge-density";
    case stat_kind::triangle_density: return "triangle-density";
    case stat_kind::two_star_density: return "twostar-density";
    case stat_kind::transitivity: return "transitivity";
    case stat_kind::pattern_p: return "pattern-p:" + shape->name();
    case stat_kind::pattern_q: return "pattern-q:" + shape->name();
    case stat_kind::eigenvalue: return "eigenvalue:" + std::to_string(eigen_index);
    }
    return {};
  }

  bool is_count() const noexcept { return kind != stat_kind::transitivity && kind != stat_kind::eigenvalue; }

  /// Vertex count of the counted subgraph; 1 for eigenvalues.
  std::size_t order() const {
    switch (kind) {
    case stat_kind::edge_density: return 2;
    case stat_kind::triangle_density:
    case stat_kind::two_star_density:
    case stat_kind::transitivity: return 3;
    case stat_kind::pattern_p:
    case stat_kind::pattern_q: return shape->vertices();
    case stat_kind::eigenvalue: return 1;
    }
    return 0;
  }

  /// Edge count e of the counted subgraph (the power of rho).
  std::size_t rho_power() const {
    switch (kind) {
    case stat_kind::edge_density: return 1;
    case stat_kind::triangle_density: return 3;
    case stat_kind::two_star_density: return 2;
    case stat_kind::transitivity: return 1;
    case stat_kind::pattern_p:
    case stat_kind::pattern_q: return shape->edges();
    case stat_kind::eigenvalue: return 0;
    }
    return 0;
  }

  /// Extra denominator on top of C(n, p) rho^e.
  std::uint64_t iso_normalizer() const {
    return (kind == stat_kind::pattern_p || kind == stat_kind::pattern_q) ? shape->iso_count() : 1;
  }
};

// ---------------------------------------------------------------------------
// Normalization helpers

inline double binomial(std::size_t n, std::size_t p) {
  if (p > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= p; ++i) r = r * static_cast<double>(n - p + i) / static_cast<double>(i);
  return r;
}

inline double int_power(double x, std::size_t e) {
  double r = 1.0;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

/// count / (C(n, p) * iso * rho^e). Every count-based value goes through here,
/// so incremental and recomputed values agree bit for bit.
inline double normalized_count(count_t count, std::size_t n, std::size_t p, std::size_t e, double rho,
                               std::uint64_t iso = 1) {
  return static_cast<double>(count) / (binomial(n, p) * static_cast<double>(iso) * int_power(rho, e));
}

namespace detail {

inline void require_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw argument_error("rho must be positive");
}

inline void require_nodes(const graph& g, std::size_t p, const char* what) {
  if (g.num_nodes() < p) {
    throw degenerate_input_error(std::string(what) + " needs at least " + std::to_string(p) + " nodes");
  }
}

} // namespace detail

/// Observed edge density 2m / (n(n-1)).
inline double plug_in_rho(const graph& g) {
  detail::require_nodes(g, 2, "plug-in rho");
  if (g.num_edges() == 0) throw undefined_statistic_error("plug-in rho is undefined on a graph without edges");
  const double n = static_cast<double>(g.num_nodes());
  return 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1.0));
}

inline double edge_density(const graph& g, double rho) {
  detail::require_rho(rho);
  detail::require_nodes(g, 2, "edge density");
  return normalized_count(g.num_edges(), g.num_nodes(), 2, 1, rho);
}

inline double triangle_density(const graph& g, double rho) {
  detail::require_rho(rho);
  detail::require_nodes(g, 3, "triangle density");
  return normalized_count(triangle_total(g), g.num_nodes(), 3, 3, rho);
}

/// Two-stars counted once per (center, unordered leaf pair), without |Iso| normalization.
inline double two_star_density(const graph& g, double rho) {
  detail::require_rho(rho);
  detail::require_nodes(g, 3, "two-star density");
  return normalized_count(two_star_total(g), g.num_nodes(), 3, 2, rho);
}

inline double transitivity_from_counts(count_t triangles, count_t two_stars, double rho) {
  if (two_stars == 0) throw undefined_statistic_error("transitivity is undefined without two-stars");
  return static_cast<double>(triangles) / (static_cast<double>(two_stars) * rho);
}

/// Triangle density over two-star density, i.e. T / (W rho).
inline double normalized_transitivity(const graph& g, double rho) {
  detail::require_rho(rho);
  detail::require_nodes(g, 3, "transitivity");
  return transitivity_from_counts(triangle_total(g), two_star_total(g), rho);
}

inline double pattern_count_Q(const graph& g, const pattern& r, double rho) {
  detail::require_rho(rho);
  detail::require_nodes(g, r.vertices(), "pattern count");
  return normalized_count(pattern_total(g, r, match_mode::containment), g.num_nodes(), r.vertices(), r.edges(), rho,
                          r.iso_count());
}

inline double pattern_count_P(const graph& g, const pattern& r, double rho) {
  detail::require_rho(rho);
  detail::require_nodes(g, r.vertices(), "pattern count");
  return normalized_count(pattern_total(g, r, match_mode::induced), g.num_nodes(), r.vertices(), r.edges(), rho,
                          r.iso_count());
}

/// Resolves the statistic's rho against `g` (plug-in uses g's own edge density).
inline double resolve_rho(const graph& g, const statistic& s) {
  if (s.kind == stat_kind::eigenvalue) return s.rho.is_plug_in() ? 1.0 : s.rho.value();
  return s.rho.is_plug_in() ? plug_in_rho(g) : s.rho.value();
}

/// Raw count underlying a count statistic.
inline count_t statistic_count(const graph& g, const statistic& s) {
  switch (s.kind) {
  case stat_kind::edge_density: return g.num_edges();
  case stat_kind::triangle_density: return triangle_total(g);
  case stat_kind::two_star_density: return two_star_total(g);
  case stat_kind::pattern_p: return pattern_total(g, *s.shape, match_mode::induced);
  case stat_kind::pattern_q: return pattern_total(g, *s.shape, match_mode::containment);
  default: throw argument_error("statistic '" + s.name() + "' is not a count");
  }
}

/// Per-node copy counts underlying a count statistic.
inline node_counts statistic_node_counts(const graph& g, const statistic& s) {
  switch (s.kind) {
  case stat_kind::edge_density: return edge_counts(g);
  case stat_kind::triangle_density: return triangle_counts(g);
  case stat_kind::two_star_density: return two_star_counts(g);
  case stat_kind::pattern_p: return pattern_counts(g, *s.shape, match_mode::induced);
  case stat_kind::pattern_q: return pattern_counts(g, *s.shape, match_mode::containment);
  default: throw argument_error("statistic '" + s.name() + "' is not a count");
  }
}

/// Value of `s` on `g` with the given rho (rho is ignored for eigenvalues).
inline double evaluate(const graph& g, const statistic& s, double rho, const eigen_options& eig = {}) {
  if (s.kind == stat_kind::eigenvalue) {
    if (g.num_nodes() < s.eigen_index) throw degenerate_input_error("graph has fewer nodes than the eigenvalue index");
    return top_eigenvalues(g, s.eigen_index, eig).back();
  }
  detail::require_rho(rho);
  detail::require_nodes(g, s.order(), "statistic");
  if (s.kind == stat_kind::transitivity) return transitivity_from_counts(triangle_total(g), two_star_total(g), rho);
  return normalized_count(statistic_count(g, s), g.num_nodes(), s.order(), s.rho_power(), rho, s.iso_normalizer());
}

/// Leave-one-node-out values Z_{n,i} and the full-graph value Z_n.
struct loo_vector_t {
  std::vector<double> values;
  double full_value = 0.0;
  double rho_used = 1.0;
};

/// values[i] is the statistic on g without node i, normalized at size n-1
/// with the same rho as the full graph. Counts use T - T_i; transitivity uses
/// the incremental (T - T_i, W - W_i) pair; eigenvalues are recomputed.
inline loo_vector_t loo_vector(const graph& g, const statistic& s, double rho, const eigen_options& eig = {}) {
  const std::size_t n = g.num_nodes();
  if (s.kind != stat_kind::eigenvalue) detail::require_rho(rho);
  const std::size_t need = s.kind == stat_kind::eigenvalue ? std::max<std::size_t>(2, s.eigen_index + 1) : s.order() + 1;
  if (n < need) {
    throw degenerate_input_error("leave-one-out for " + s.name() + " needs at least " + std::to_string(need) + " nodes");
  }

  loo_vector_t out;
  out.rho_used = rho;
  out.values.resize(n);

  switch (s.kind) {
  case stat_kind::eigenvalue: {
    out.full_value = evaluate(g, s, rho, eig);
    for (node_id i = 0; i < n; ++i) {
      out.values[i] = evaluate(induced_subgraph(g, leave_one_out(g, i)), s, rho, eig);
    }
    return out;
  }
  case stat_kind::transitivity: {
    const node_counts t = triangle_counts(g);
    const node_counts w = two_star_counts(g);
    out.full_value = transitivity_from_counts(t.total, w.total, rho);
    for (std::size_t i = 0; i < n; ++i) {
      if (w.total == w.per_node[i]) {
        throw undefined_statistic_error("transitivity is undefined after removing node " + std::to_string(i));
      }
      out.values[i] = transitivity_from_counts(t.total - t.per_node[i], w.total - w.per_node[i], rho);
    }
    return out;
  }
  default: {
    const node_counts c = statistic_node_counts(g, s);
    const std::size_t p = s.order();
    const std::size_t e = s.rho_power();
    const std::uint64_t iso = s.iso_normalizer();
    out.full_value = normalized_count(c.total, n, p, e, rho, iso);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = normalized_count(c.total - c.per_node[i], n - 1, p, e, rho, iso);
    return out;
  }
  }
}

} // namespace netjack
