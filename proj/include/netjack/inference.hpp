#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "netjack/error.hpp"
#include "netjack/graph.hpp"
#include "netjack/random.hpp"
#include "netjack/resampling.hpp"
#include "netjack/statistic.hpp"

namespace netjack {

/// Standard normal quantile. Acklam's rational approximation refined by two
/// Halley steps on erfc, good to ~1e-15 over (0, 1).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw argument_error("normal quantile needs 0 < p < 1");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double low = 0.02425;

  double x;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double sqrt2pi = std::sqrt(2.0 * M_PI);
  for (int step = 0; step < 2; ++step) {
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * sqrt2pi * std::exp(x * x / 2.0);
    x -= u / (1.0 + x * u / 2.0);
  }
  return x;
}

enum class interval_method { normal, chebyshev };

struct confidence_interval {
  double center = 0.0;
  double half_width = 0.0;
  double level = 0.95;
  double lower = 0.0;
  double upper = 0.0;
};

inline confidence_interval make_interval(double center, double half_width, double level) {
  return {center, half_width, level, center - half_width, center + half_width};
}

/// center ± z_{(1+level)/2} sqrt(var_hat).
inline confidence_interval normal_ci(double center, double var_hat, double level) {
  if (!(var_hat >= 0.0)) throw argument_error("variance must be nonnegative");
  if (!(level > 0.0 && level < 1.0)) throw argument_error("level must lie in (0, 1)");
  return make_interval(center, normal_quantile((1.0 + level) / 2.0) * std::sqrt(var_hat), level);
}

/// Distribution-free interval from Chebyshev's inequality: half-width sqrt(var/(1-level)).
inline confidence_interval chebyshev_ci(double center, double var_hat, double level) {
  if (!(var_hat >= 0.0)) throw argument_error("variance must be nonnegative");
  if (!(level > 0.0 && level < 1.0)) throw argument_error("level must lie in (0, 1)");
  return make_interval(center, std::sqrt(var_hat / (1.0 - level)), level);
}

inline confidence_interval interval(double center, double var_hat, double level, interval_method method) {
  return method == interval_method::normal ? normal_ci(center, var_hat, level) : chebyshev_ci(center, var_hat, level);
}

/// Jackknife interval for a statistic on one graph.
inline confidence_interval jackknife_ci(const graph& g, const statistic& stat, double level,
                                        interval_method method = interval_method::normal) {
  const auto est = jackknife(g, stat);
  return interval(est.loo.full_value, est.var_hat, level, method);
}

struct split_result {
  graph train;
  graph test;
  std::vector<node_id> train_nodes; ///< original ids, ascending
  std::vector<node_id> test_nodes;
};

/// Random halves of sizes ceil(n/2) and floor(n/2); edges across the cut are dropped.
inline split_result split_train_test(const graph& g, std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  if (n < 4) throw degenerate_input_error("train/test split needs at least 4 nodes");
  std::vector<node_id> order(n);
  std::iota(order.begin(), order.end(), node_id{0});
  splitmix64 rng(seed);
  for (std::size_t k = n - 1; k > 0; --k) std::swap(order[k], order[rng.below(k + 1)]);

  const std::size_t half = (n + 1) / 2;
  split_result out;
  out.train_nodes.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
  out.test_nodes.assign(order.begin() + static_cast<std::ptrdiff_t>(half), order.end());
  std::sort(out.train_nodes.begin(), out.train_nodes.end());
  std::sort(out.test_nodes.begin(), out.test_nodes.end());
  out.train = induced_subgraph(g, node_subset::from_nodes(n, out.train_nodes));
  out.test = induced_subgraph(g, node_subset::from_nodes(n, out.test_nodes));
  return out;
}

struct comparison_verdict {
  confidence_interval ci_a;
  confidence_interval ci_b;
  double var_a = 0.0;
  double var_b = 0.0;
  bool disjoint = false;
  double implied_test_level = 0.0;
};

inline bool intervals_disjoint(const confidence_interval& a, const confidence_interval& b) {
  return a.upper < b.lower || b.upper < a.lower;
}

/// Two networks differ at level 2(1 - level) when their jackknife intervals do
/// not overlap. Each graph resolves rho on its own (plug-in per network).
inline comparison_verdict two_sample_compare(const graph& g1, const graph& g2, const statistic& stat, double level,
                                             interval_method method = interval_method::normal) {
  const auto est_a = jackknife(g1, stat);
  const auto est_b = jackknife(g2, stat);
  comparison_verdict v;
  v.var_a = est_a.var_hat;
  v.var_b = est_b.var_hat;
  v.ci_a = interval(est_a.loo.full_value, est_a.var_hat, level, method);
  v.ci_b = interval(est_b.loo.full_value, est_b.var_hat, level, method);
  v.disjoint = intervals_disjoint(v.ci_a, v.ci_b);
  v.implied_test_level = 2.0 * (1.0 - level);
  return v;
}

} // namespace netjack
