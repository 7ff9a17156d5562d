#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "netjack/error.hpp"
#include "netjack/graph.hpp"
#include "netjack/graphon.hpp"
#include "netjack/random.hpp"
#include "netjack/statistic.hpp"

namespace netjack {

/// Sum of squared deviations about `center`, accumulated in index order.
inline double sum_squared_deviation(std::span<const double> values, double center) {
  double s = 0.0;
  for (double v : values) s += (v - center) * (v - center);
  return s;
}

/// Mean accumulated as offsets from the first value, so equal values give that value exactly.
inline double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double base = values.front();
  double s = 0.0;
  for (double v : values) s += v - base;
  return base + s / static_cast<double>(values.size());
}

/// Unbiased sample variance (denominator count - 1).
inline double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  return sum_squared_deviation(values, mean(values)) / static_cast<double>(values.size() - 1);
}

struct jackknife_estimate {
  loo_vector_t loo;
  double var_hat = 0.0;    ///< sum_i (Z_{n,i} - center)^2, no prefactor
  double scaled_var = 0.0; ///< n * var_hat
  statistic stat;
  std::size_t n = 0;
};

/// Network jackknife: var_hat = sum_i (Z_{n,i} - mean_i Z_{n,i})^2.
inline jackknife_estimate jackknife(const graph& g, const statistic& stat, const eigen_options& eig = {}) {
  jackknife_estimate est;
  est.stat = stat;
  est.n = g.num_nodes();
  est.loo = loo_vector(g, stat, resolve_rho(g, stat), eig);
  est.var_hat = sum_squared_deviation(est.loo.values, mean(est.loo.values));
  est.scaled_var = static_cast<double>(est.n) * est.var_hat;
  return est;
}

/// Variant centered at the full-graph value: sum_i (Z_n - Z_{n,i})^2.
/// Never smaller than the standard estimate, and often loose.
inline jackknife_estimate jackknife_alternative(const graph& g, const statistic& stat, const eigen_options& eig = {}) {
  jackknife_estimate est;
  est.stat = stat;
  est.n = g.num_nodes();
  est.loo = loo_vector(g, stat, resolve_rho(g, stat), eig);
  est.var_hat = sum_squared_deviation(est.loo.values, est.loo.full_value);
  est.scaled_var = static_cast<double>(est.n) * est.var_hat;
  return est;
}

struct subsample_estimate {
  std::size_t b = 0;
  std::size_t replicates = 0;
  std::vector<double> replicate_values; ///< kept replicates, in replicate order
  std::size_t dropped = 0;
  double var_hat = 0.0; ///< (b/n) * mean squared deviation of replicate values
  double rho_used = 1.0;
  std::uint64_t seed = 0;
};

/// Uniform b-subset of {0..n-1}, sorted. Partial Fisher-Yates.
inline std::vector<node_id> random_subset(std::size_t n, std::size_t b, std::uint64_t seed) {
  std::vector<node_id> pool(n);
  std::iota(pool.begin(), pool.end(), node_id{0});
  splitmix64 rng(seed);
  for (std::size_t k = 0; k < b; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.below(n - k));
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(b);
  std::sort(pool.begin(), pool.end());
  return pool;
}

/// Node-subsampling variance: B induced subgraphs on b uniformly chosen nodes,
/// each normalized at size b with the full-graph rho, rescaled by b/n.
inline subsample_estimate subsample_variance(const graph& g, const statistic& stat, std::size_t b,
                                             std::size_t replicates, std::uint64_t seed,
                                             const eigen_options& eig = {}) {
  const std::size_t n = g.num_nodes();
  if (replicates < 2) throw argument_error("subsampling needs B >= 2");
  if (b > n) throw argument_error("subsample size exceeds the graph size");
  if (b <= stat.order() && stat.kind != stat_kind::eigenvalue) {
    throw degenerate_input_error("subsample size must exceed the pattern order");
  }
  if (stat.kind == stat_kind::eigenvalue && b < stat.eigen_index) {
    throw degenerate_input_error("subsample size is below the eigenvalue index");
  }

  subsample_estimate est;
  est.b = b;
  est.replicates = replicates;
  est.seed = seed;
  est.rho_used = resolve_rho(g, stat);
  est.replicate_values.reserve(replicates);
  for (std::size_t j = 0; j < replicates; ++j) {
    const auto nodes = random_subset(n, b, replicate_seed(seed, j));
    const graph sub = induced_subgraph(g, node_subset::from_nodes(n, nodes));
    try {
      est.replicate_values.push_back(evaluate(sub, stat, est.rho_used, eig));
    } catch (const undefined_statistic_error&) {
      ++est.dropped;
    }
  }
  if (est.dropped * 10 > replicates) {
    throw undefined_statistic_error("statistic undefined on " + std::to_string(est.dropped) + " of " +
                                    std::to_string(replicates) + " subsamples");
  }
  const auto& v = est.replicate_values;
  const double msd = sum_squared_deviation(v, mean(v)) / static_cast<double>(v.size());
  est.var_hat = static_cast<double>(b) / static_cast<double>(n) * msd;
  return est;
}

struct efron_stein_result {
  double mean_jk = 0.0;
  double emp_var = 0.0;
  double mcse = 0.0;
  bool conservative = false;
  std::size_t reps = 0;
};

/// Monte Carlo check that the jackknife at size n over-estimates, on average,
/// the variance of the statistic at size n-1 (the graph with its last node removed).
inline efron_stein_result efron_stein_check(const graphon_model& model, std::size_t n, const statistic& stat,
                                            std::size_t reps, std::uint64_t master_seed) {
  if (reps < 30) throw argument_error("efron_stein_check needs reps >= 30");
  std::vector<double> jk(reps);
  std::vector<double> reduced(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto sample = sample_graph(model, n, replicate_seed(master_seed, r));
    const auto est = jackknife(sample.g, stat);
    jk[r] = est.var_hat;
    reduced[r] = est.loo.values[n - 1];
  }
  efron_stein_result out;
  out.reps = reps;
  out.mean_jk = mean(jk);
  out.emp_var = sample_variance(reduced);
  out.mcse = std::sqrt(sample_variance(jk) / static_cast<double>(reps));
  out.conservative = out.mean_jk >= out.emp_var - 2.0 * out.mcse;
  return out;
}

} // namespace netjack
