#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "netjack/error.hpp"
#include "netjack/graph.hpp"
#include "netjack/random.hpp"

namespace netjack {

/// Stochastic block model: block a occupies the latent interval of width pi[a].
struct sbm_params {
  std::vector<std::vector<double>> block_probs;
  std::vector<double> block_weights;
};

/// Edge probability nu_n * |u - v| with nu_n = n^exponent.
struct absdiff_params {
  double exponent;
};

/// Arbitrary symmetric kernel with its own sparsity schedule.
struct kernel_params {
  std::function<double(double, double)> w;
  std::function<double(std::size_t)> rho;
  std::string label = "kernel";
};

/// Generative description of a sparse graphon: edge (i, j) is present with
/// probability min(rho_n * w(xi_i, xi_j), 1).
class graphon_model {
public:
  using kind_type = std::variant<sbm_params, absdiff_params, kernel_params>;

  explicit graphon_model(kind_type kind) : kind_(std::move(kind)) {
    if (const auto* sbm = std::get_if<sbm_params>(&kind_)) {
      cumulative_.reserve(sbm->block_weights.size());
      double total = 0.0;
      for (double w : sbm->block_weights) {
        total += w;
        cumulative_.push_back(total);
      }
      cumulative_.back() = 1.0;
    }
  }

  const kind_type& kind() const noexcept { return kind_; }

  /// Sparsity level rho_n applied at graph size n.
  double rho_at(std::size_t n) const {
    return std::visit(
        [n](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, sbm_params>) {
            return 1.0;
          } else if constexpr (std::is_same_v<T, absdiff_params>) {
            return std::pow(static_cast<double>(n), k.exponent);
          } else {
            return k.rho(n);
          }
        },
        kind_);
  }

  /// Block index of latent position u (SBM only).
  std::size_t block_of(double u) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

  double kernel(double u, double v) const {
    return std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, sbm_params>) {
            return k.block_probs[block_of(u)][block_of(v)];
          } else if constexpr (std::is_same_v<T, absdiff_params>) {
            return std::abs(u - v);
          } else {
            return k.w(u, v);
          }
        },
        kind_);
  }

  std::string describe() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, sbm_params>) {
            return "sbm(" + std::to_string(k.block_weights.size()) + " blocks)";
          } else if constexpr (std::is_same_v<T, absdiff_params>) {
            return "absdiff(" + std::to_string(k.exponent) + ")";
          } else {
            return k.label;
          }
        },
        kind_);
  }

private:
  kind_type kind_;
  std::vector<double> cumulative_;
};

inline graphon_model sbm_model(std::vector<std::vector<double>> block_probs, std::vector<double> block_weights) {
  const std::size_t r = block_weights.size();
  if (r == 0) throw argument_error("SBM needs at least one block");
  if (block_probs.size() != r) throw argument_error("SBM matrix size does not match the block weights");
  for (std::size_t a = 0; a < r; ++a) {
    if (block_probs[a].size() != r) throw argument_error("SBM matrix is not square");
    for (std::size_t b = 0; b < r; ++b) {
      const double p = block_probs[a][b];
      if (!(p >= 0.0 && p <= 1.0)) throw argument_error("SBM probabilities must lie in [0, 1]");
      if (p != block_probs[b][a]) throw argument_error("SBM matrix must be symmetric");
    }
  }
  double total = 0.0;
  for (double w : block_weights) {
    if (!(w >= 0.0)) throw argument_error("SBM block weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw argument_error("SBM block weights must sum to 1");
  return graphon_model(sbm_params{std::move(block_probs), std::move(block_weights)});
}

/// Three-community block model used throughout the simulation study.
inline graphon_model sbm3_model() {
  return sbm_model({{0.4, 0.1, 0.1}, {0.1, 0.5, 0.1}, {0.1, 0.1, 0.7}}, {0.3, 0.3, 0.4});
}

inline graphon_model absdiff_model(double exponent) {
  if (!(exponent <= 0.0)) throw argument_error("absdiff exponent must be <= 0");
  return graphon_model(absdiff_params{exponent});
}

inline graphon_model kernel_model(std::function<double(double, double)> w, std::function<double(std::size_t)> rho,
                                  std::string label = "kernel") {
  if (!w || !rho) throw argument_error("kernel model needs both w and rho");
  return graphon_model(kernel_params{std::move(w), std::move(rho), std::move(label)});
}

/// w == c with a constant sparsity level.
inline graphon_model constant_model(double w, double rho) {
  if (!(w >= 0.0)) throw argument_error("constant kernel must be nonnegative");
  if (!(rho >= 0.0 && rho <= 1.0)) throw argument_error("rho must lie in [0, 1]");
  return kernel_model([w](double, double) { return w; }, [rho](std::size_t) { return rho; },
                      "constant(" + std::to_string(w) + "," + std::to_string(rho) + ")");
}

struct sampled_graph {
  graph g;
  std::vector<double> latents;
  double rho = 1.0;
  std::uint64_t seed = 0;
};

namespace detail {

constexpr std::uint64_t latent_stream = 0x6c6174656e747331ULL;
constexpr std::uint64_t edge_stream = 0x656467657331ULL;

template <class Prob>
graph sample_edges(std::size_t n, std::uint64_t seed, Prob&& prob) {
  const std::uint64_t key = mix64(seed ^ edge_stream);
  std::vector<edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = prob(i, j);
      if (counter_uniform(key, static_cast<std::uint64_t>(i) * n + j) < p) {
        edges.push_back({static_cast<node_id>(i), static_cast<node_id>(j)});
      }
    }
  }
  return graph::from_edges(n, edges);
}

} // namespace detail

/// Draws one graph. Every latent and every edge coin is a counter-based draw
/// keyed by `seed`, so the result is a pure function of (model, n, seed).
inline sampled_graph sample_graph(const graphon_model& model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw argument_error("sample_graph needs n >= 1");
  sampled_graph out;
  out.seed = seed;
  out.rho = model.rho_at(n);
  if (!(out.rho >= 0.0 && out.rho <= 1.0)) throw argument_error("rho_n must lie in [0, 1]");

  const std::uint64_t latent_key = mix64(seed ^ detail::latent_stream);
  out.latents.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.latents[i] = counter_uniform(latent_key, i);

  const double rho = out.rho;
  const auto& xi = out.latents;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, sbm_params>) {
          std::vector<std::size_t> block(n);
          for (std::size_t i = 0; i < n; ++i) block[i] = model.block_of(xi[i]);
          out.g = detail::sample_edges(n, seed, [&](std::size_t i, std::size_t j) {
            return std::min(rho * k.block_probs[block[i]][block[j]], 1.0);
          });
        } else if constexpr (std::is_same_v<T, absdiff_params>) {
          out.g = detail::sample_edges(
              n, seed, [&](std::size_t i, std::size_t j) { return std::min(rho * std::abs(xi[i] - xi[j]), 1.0); });
        } else {
          out.g = detail::sample_edges(n, seed, [&](std::size_t i, std::size_t j) {
            const double w = k.w(xi[i], xi[j]);
            if (!(w >= 0.0)) throw argument_error("kernel returned a negative or NaN value");
            return std::min(rho * w, 1.0);
          });
        }
      },
      model.kind());
  return out;
}

} // namespace netjack
