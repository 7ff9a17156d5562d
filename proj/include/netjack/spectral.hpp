#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "netjack/error.hpp"
#include "netjack/graph.hpp"
#include "netjack/random.hpp"

namespace netjack {

namespace detail {

/// Implicit QL on a symmetric tridiagonal matrix (diagonal `d`, off-diagonal
/// `off` of length n-1). On return `d` holds the eigenvalues, unsorted.
///
/// `z` is a row-major block of `rows` x n. The plane rotations are applied to
/// every row, so seeding it with selected rows of the identity yields those
/// rows of the eigenvector matrix.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double> off, std::vector<double>& z, std::size_t rows) {
  const std::size_t n = d.size();
  if (n == 0) return;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = off[i];

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double shift_total = 0.0;
  double scale = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    scale = std::max(scale, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n && std::abs(e[m]) > eps * scale) ++m;
    if (m == n) m = n - 1;

    std::size_t sweeps = 0;
    if (m > l) {
      do {
        if (++sweeps > 60) throw numerical_error("tridiagonal QL did not converge", std::abs(e[l]));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < rows; ++k) {
            double* row = z.data() + k * n;
            h = row[ii + 1];
            row[ii + 1] = s * row[ii] + c * h;
            row[ii] = c * row[ii] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * scale);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }
}

inline void adjacency_multiply(const graph& g, const std::vector<double>& x, std::vector<double>& y) {
  for (node_id i = 0; i < g.num_nodes(); ++i) {
    double acc = 0.0;
    for (node_id j : g.neighbors(i)) acc += x[j];
    y[i] = acc;
  }
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
  for (const auto& q : basis) {
    const double coef = dot(w, q);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= coef * q[i];
  }
}

/// Index of the largest-magnitude entry, ties broken toward the larger value.
inline std::size_t dominant_index(const std::vector<double>& theta) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < theta.size(); ++i) {
    const double a = std::abs(theta[i]);
    const double b = std::abs(theta[best]);
    if (a > b || (a == b && theta[i] > theta[best])) best = i;
  }
  return best;
}

struct eigenpair {
  double value = 0.0;
  std::vector<double> vector;
};

/// Largest-magnitude eigenpair of the adjacency operator restricted to the
/// orthogonal complement of `locked`. Lanczos with full reorthogonalization;
/// a breakdown restarts from a fresh vector orthogonal to everything so far.
/// Residuals are judged against `scale`, the largest magnitude seen, since
/// the locked vectors carry error of that order into the deflated operator.
inline eigenpair dominant_pair(const graph& g, const std::vector<std::vector<double>>& locked, double tol,
                               std::size_t max_iter, double scale = 0.0) {
  const std::size_t n = g.num_nodes();
  const std::size_t room = n - locked.size();
  splitmix64 rng(0x4c616e637a6f73ULL + locked.size());

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha;
  std::vector<double> beta; // beta[j] couples basis[j] and basis[j+1]

  const auto fresh_vector = [&]() -> bool {
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<double> v(n);
      for (auto& x : v) x = rng.uniform() - 0.5;
      for (int pass = 0; pass < 2; ++pass) {
        orthogonalize(v, locked);
        orthogonalize(v, basis);
      }
      const double norm = std::sqrt(dot(v, v));
      if (norm > 1e-8) {
        for (auto& x : v) x /= norm;
        basis.push_back(std::move(v));
        return true;
      }
    }
    return false;
  };

  if (!fresh_vector()) throw numerical_error("could not build a Lanczos start vector", 0.0);

  std::vector<double> w(n);
  double last_residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const std::size_t j = basis.size() - 1;
    adjacency_multiply(g, basis[j], w);
    const double a = dot(w, basis[j]);
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      orthogonalize(w, locked);
      orthogonalize(w, basis);
    }
    double b = std::sqrt(dot(w, w));
    const std::size_t m = alpha.size();

    // Ritz values plus the last row of the eigenvector matrix give the residual bounds.
    std::vector<double> theta = alpha;
    std::vector<double> last_row(m, 0.0);
    last_row[m - 1] = 1.0;
    tridiagonal_ql(theta, beta, last_row, 1);
    const std::size_t best = dominant_index(theta);
    const double lambda = theta[best];
    const double threshold = tol * std::max({1.0, std::abs(lambda), scale});
    const bool exhausted = m == room;
    const bool breakdown = b <= 1e-12 * std::max(1.0, std::abs(lambda));
    last_residual = std::abs(b * last_row[best]);

    if (last_residual <= threshold || exhausted) {
      // Full Ritz vector, then an honest residual check against A.
      std::vector<double> zfull(m * m, 0.0);
      for (std::size_t r = 0; r < m; ++r) zfull[r * m + r] = 1.0;
      std::vector<double> theta_full = alpha;
      tridiagonal_ql(theta_full, beta, zfull, m);
      const std::size_t idx = dominant_index(theta_full);
      eigenpair out;
      out.value = theta_full[idx];
      out.vector.assign(n, 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        const double coef = zfull[r * m + idx];
        for (std::size_t i = 0; i < n; ++i) out.vector[i] += coef * basis[r][i];
      }
      const double norm = std::sqrt(dot(out.vector, out.vector));
      for (auto& x : out.vector) x /= norm;
      std::vector<double> av(n);
      adjacency_multiply(g, out.vector, av);
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) res += (av[i] - out.value * out.vector[i]) * (av[i] - out.value * out.vector[i]);
      res = std::sqrt(res);
      last_residual = res;
      if (res <= tol * std::max({1.0, std::abs(out.value), scale})) return out;
      if (exhausted) throw numerical_error("Lanczos exhausted the space without meeting the tolerance", res);
    }

    if (breakdown) {
      beta.push_back(0.0);
      if (!fresh_vector()) throw numerical_error("Lanczos restart failed", last_residual);
    } else {
      beta.push_back(b);
      for (auto& x : w) x /= b;
      basis.push_back(w);
    }
  }
  throw numerical_error("eigensolver did not converge within max_iter", last_residual);
}

} // namespace detail

struct eigen_options {
  double tol = 1e-10;
  std::size_t max_iter = 0; ///< 0 means 10 * n
};

/// The k largest-magnitude adjacency eigenvalues, descending by magnitude
/// (ties put the positive value first). Each is found by Lanczos on the
/// operator deflated against the eigenvectors already locked.
inline std::vector<double> top_eigenvalues(const graph& g, std::size_t k, const eigen_options& options = {}) {
  const std::size_t n = g.num_nodes();
  if (k < 1 || k > n) throw argument_error("top_eigenvalues needs 1 <= k <= n");
  if (!(options.tol > 0.0)) throw argument_error("eigen tolerance must be positive");
  const std::size_t max_iter = options.max_iter == 0 ? 10 * n : options.max_iter;

  const auto same_magnitude = [&](double a, double b) {
    return std::abs(std::abs(a) - std::abs(b)) <= 2.0 * options.tol * std::max(1.0, std::abs(b));
  };
  std::vector<std::vector<double>> locked;
  std::vector<double> values;
  for (std::size_t t = 0; t < k; ++t) {
    auto pair = detail::dominant_pair(g, locked, options.tol, max_iter, values.empty() ? 0.0 : std::abs(values.front()));
    values.push_back(pair.value);
    locked.push_back(std::move(pair.vector));
  }
  // If the smallest-magnitude run holds a negative value, positive values of that
  // magnitude may still be unlocked and must take precedence.
  const double kth = *std::min_element(values.begin(), values.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
  const bool negative_in_run =
      std::any_of(values.begin(), values.end(), [&](double v) { return v < 0.0 && same_magnitude(v, kth); });
  if (negative_in_run) {
    while (values.size() < n) {
      auto pair = detail::dominant_pair(g, locked, options.tol, max_iter, std::abs(values.front()));
      if (!same_magnitude(pair.value, kth)) break;
      values.push_back(pair.value);
      locked.push_back(std::move(pair.vector));
    }
  }
  std::stable_sort(values.begin(), values.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  // Runs of equal magnitude up to the solver tolerance are ordered positive first.
  for (std::size_t lo = 0; lo < values.size();) {
    std::size_t hi = lo + 1;
    while (hi < values.size() && same_magnitude(values[hi], values[lo])) ++hi;
    std::sort(values.begin() + static_cast<std::ptrdiff_t>(lo), values.begin() + static_cast<std::ptrdiff_t>(hi),
              std::greater<>());
    lo = hi;
  }
  values.resize(k);
  return values;
}

} // namespace netjack
