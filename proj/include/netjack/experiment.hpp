#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "netjack/error.hpp"
#include "netjack/graph.hpp"
#include "netjack/graphon.hpp"
#include "netjack/parallel.hpp"
#include "netjack/random.hpp"
#include "netjack/report.hpp"
#include "netjack/resampling.hpp"
#include "netjack/statistic.hpp"

namespace netjack {

/// A variance estimator to compare against the Monte Carlo variance.
struct method_spec {
  enum class kind_t { jackknife, jackknife_alt, subsample };

  kind_t kind = kind_t::jackknife;
  double b_frac = 0.0;        ///< subsample only
  std::size_t replicates = 0; ///< subsample only

  static method_spec jackknife() { return {kind_t::jackknife, 0.0, 0}; }
  static method_spec jackknife_alt() { return {kind_t::jackknife_alt, 0.0, 0}; }
  static method_spec subsample(double b_frac, std::size_t replicates) {
    return {kind_t::subsample, b_frac, replicates};
  }

  std::string label() const {
    switch (kind) {
    case kind_t::jackknife: return "jackknife";
    case kind_t::jackknife_alt: return "jackknife-alt";
    case kind_t::subsample: return "subsample";
    }
    return {};
  }

  std::optional<double> frac() const {
    return kind == kind_t::subsample ? std::optional<double>(b_frac) : std::nullopt;
  }

  /// Subsample size for a graph of n nodes.
  std::size_t subsample_size(std::size_t n) const {
    return static_cast<std::size_t>(std::llround(b_frac * static_cast<double>(n)));
  }

  /// Variance estimate of `stat` on `g`; `seed` feeds the subsample draws.
  double estimate(const graph& g, const statistic& stat, std::uint64_t seed) const {
    switch (kind) {
    case kind_t::jackknife: return netjack::jackknife(g, stat).var_hat;
    case kind_t::jackknife_alt: return jackknife_alternative(g, stat).var_hat;
    case kind_t::subsample:
      return subsample_variance(g, stat, subsample_size(g.num_nodes()), replicates, seed).var_hat;
    }
    return 0.0;
  }
};

enum class rho_policy { model, plug_in };

struct experiment_config {
  graphon_model model = sbm3_model();
  std::string model_name = "sbm3";
  std::vector<std::size_t> n_list;
  std::size_t reps = 100;
  std::vector<std::string> statistics;
  rho_policy rho = rho_policy::model;
  std::vector<method_spec> methods;
  std::uint64_t master_seed = 1;
  std::string output_path;
  std::string svg_path;
};

inline const std::vector<double>& default_b_fracs() {
  static const std::vector<double> fracs{0.05, 0.1, 0.2};
  return fracs;
}
constexpr std::size_t default_subsample_replicates = 1000;

namespace detail {

using json = nlohmann::json;

inline void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.contains(k)) throw config_error(where.empty() ? k : where + "." + k, "unknown key");
  }
}

inline double json_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw config_error(field, "expected a number");
  return j.get<double>();
}

inline std::uint64_t json_count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw config_error(field, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline std::vector<double> json_numbers(const json& j, const std::string& field) {
  if (!j.is_array()) throw config_error(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(json_number(x, field));
  return out;
}

} // namespace detail

/// Model from a JSON value: a preset name ("sbm3", "gr2") or an object
/// with "kind" in {sbm, absdiff, constant}.
inline std::pair<graphon_model, std::string> parse_model(const nlohmann::json& j) {
  using detail::json;
  try {
    if (j.is_string()) {
      const auto name = j.get<std::string>();
      if (name == "sbm3") return {sbm3_model(), name};
      if (name == "gr2") return {absdiff_model(-1.0 / 3.0), name};
      throw config_error("model", "unknown preset '" + name + "'");
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
      throw config_error("model", "expected a preset name or an object with a 'kind'");
    }
    const auto kind = j["kind"].get<std::string>();
    if (kind == "sbm") {
      detail::check_keys(j, {"kind", "B", "pi"}, "model");
      if (!j.contains("B") || !j["B"].is_array()) throw config_error("model.B", "expected a matrix");
      if (!j.contains("pi")) throw config_error("model.pi", "missing");
      std::vector<std::vector<double>> block;
      for (const auto& row : j["B"]) block.push_back(detail::json_numbers(row, "model.B"));
      return {sbm_model(std::move(block), detail::json_numbers(j["pi"], "model.pi")), "sbm"};
    }
    if (kind == "absdiff") {
      detail::check_keys(j, {"kind", "exponent"}, "model");
      if (!j.contains("exponent")) throw config_error("model.exponent", "missing");
      const double e = detail::json_number(j["exponent"], "model.exponent");
      return {absdiff_model(e), "absdiff"};
    }
    if (kind == "constant") {
      detail::check_keys(j, {"kind", "w", "rho"}, "model");
      const double w = j.contains("w") ? detail::json_number(j["w"], "model.w") : 1.0;
      const double rho = j.contains("rho") ? detail::json_number(j["rho"], "model.rho") : 1.0;
      return {constant_model(w, rho), "constant"};
    }
    throw config_error("model.kind", "unknown model kind '" + kind + "'");
  } catch (const argument_error& e) {
    throw config_error("model", e.what());
  }
}

/// Parses and validates an experiment configuration (JSON text).
/// Defaults: reps 100; methods jackknife + subsample at b/n in {0.05, 0.1, 0.2}
/// with B = 1000; rho from the model; master_seed 1.
inline experiment_config parse_config(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error("<root>", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw config_error("<root>", "expected a JSON object");
  detail::check_keys(root,
                     {"model", "n_list", "reps", "statistics", "rho", "methods", "b_frac", "B", "master_seed",
                      "output", "svg"},
                     "");

  experiment_config cfg;
  if (!root.contains("model")) throw config_error("model", "missing");
  std::tie(cfg.model, cfg.model_name) = parse_model(root["model"]);

  if (!root.contains("n_list") || !root["n_list"].is_array()) throw config_error("n_list", "expected an array");
  for (const auto& v : root["n_list"]) cfg.n_list.push_back(detail::json_count(v, "n_list"));
  if (cfg.n_list.empty()) throw config_error("n_list", "must not be empty");
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 2) throw config_error("n_list", "graph sizes must be >= 2");
    if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1]) throw config_error("n_list", "must be strictly ascending");
  }

  if (root.contains("reps")) cfg.reps = detail::json_count(root["reps"], "reps");
  if (cfg.reps < 2) throw config_error("reps", "must be >= 2");

  if (!root.contains("statistics") || !root["statistics"].is_array() || root["statistics"].empty()) {
    throw config_error("statistics", "expected a nonempty array of statistic names");
  }
  for (const auto& s : root["statistics"]) {
    if (!s.is_string()) throw config_error("statistics", "expected statistic names");
    try {
      statistic::parse(s.get<std::string>());
    } catch (const argument_error& e) {
      throw config_error("statistics", e.what());
    }
    cfg.statistics.push_back(s.get<std::string>());
  }

  if (root.contains("rho")) {
    const auto& r = root["rho"];
    if (r == "model") {
      cfg.rho = rho_policy::model;
    } else if (r == "plugin") {
      cfg.rho = rho_policy::plug_in;
    } else {
      throw config_error("rho", "expected \"model\" or \"plugin\"");
    }
  }

  std::vector<double> fracs = default_b_fracs();
  if (root.contains("b_frac")) {
    fracs = root["b_frac"].is_array() ? detail::json_numbers(root["b_frac"], "b_frac")
                                      : std::vector<double>{detail::json_number(root["b_frac"], "b_frac")};
  }
  const auto check_frac = [](double f, const std::string& field) {
    if (!(f > 0.0 && f <= 1.0)) throw config_error(field, "b_frac must lie in (0, 1]");
  };
  for (double f : fracs) check_frac(f, "b_frac");

  std::size_t replicates = default_subsample_replicates;
  if (root.contains("B")) replicates = detail::json_count(root["B"], "B");
  if (replicates < 2) throw config_error("B", "must be >= 2");

  const json methods = root.contains("methods") ? root["methods"] : json::array({"jackknife", "subsample"});
  if (!methods.is_array() || methods.empty()) throw config_error("methods", "expected a nonempty array");
  for (const auto& m : methods) {
    if (m == "jackknife") {
      cfg.methods.push_back(method_spec::jackknife());
    } else if (m == "jackknife-alt") {
      cfg.methods.push_back(method_spec::jackknife_alt());
    } else if (m == "subsample") {
      for (double f : fracs) cfg.methods.push_back(method_spec::subsample(f, replicates));
    } else if (m.is_object() && m.value("kind", "") == "subsample") {
      detail::check_keys(m, {"kind", "b_frac", "B"}, "methods");
      if (!m.contains("b_frac")) throw config_error("methods.b_frac", "missing");
      const double f = detail::json_number(m["b_frac"], "methods.b_frac");
      check_frac(f, "methods.b_frac");
      const std::size_t reps_b = m.contains("B") ? detail::json_count(m["B"], "methods.B") : replicates;
      if (reps_b < 2) throw config_error("methods.B", "must be >= 2");
      cfg.methods.push_back(method_spec::subsample(f, reps_b));
    } else {
      throw config_error("methods", "unknown method " + m.dump());
    }
  }

  if (root.contains("master_seed")) cfg.master_seed = detail::json_count(root["master_seed"], "master_seed");
  if (root.contains("output")) {
    if (!root["output"].is_string()) throw config_error("output", "expected a path");
    cfg.output_path = root["output"].get<std::string>();
  }
  if (root.contains("svg")) {
    if (!root["svg"].is_string()) throw config_error("svg", "expected a path");
    cfg.svg_path = root["svg"].get<std::string>();
  }
  return cfg;
}

/// Seed of replicate `rep` at graph size n.
inline std::uint64_t graph_seed(std::uint64_t master_seed, std::size_t n, std::size_t rep) {
  return replicate_seed(replicate_seed(master_seed, n), rep);
}

/// For each n: simulate `reps` graphs, take the cross-replicate variance of
/// each statistic as the truth, and report the mean (and standard error) of
/// estimate / truth for every method. Replicates where a statistic or an
/// estimate is undefined are left out of that cell only.
inline ratio_report run_ratio_experiment(const experiment_config& cfg, std::size_t workers = 1) {
  if (cfg.reps < 2) throw config_error("reps", "must be >= 2");
  if (cfg.n_list.empty()) throw config_error("n_list", "must not be empty");

  const std::size_t n_stats = cfg.statistics.size();
  const std::size_t n_methods = cfg.methods.size();
  ratio_report report;

  struct replicate_result {
    std::vector<std::optional<double>> value;                  // [stat]
    std::vector<std::vector<std::optional<double>>> estimate; // [stat][method]
  };

  for (std::size_t n : cfg.n_list) {
    const double rho_n = cfg.model.rho_at(n);
    std::vector<statistic> stats;
    for (const auto& name : cfg.statistics) {
      if (cfg.rho == rho_policy::plug_in) {
        stats.push_back(statistic::parse(name, rho_mode::plug_in()));
      } else {
        if (!(rho_n > 0.0)) throw config_error("rho", "model rho is zero at n = " + std::to_string(n));
        stats.push_back(statistic::parse(name, rho_mode::known(rho_n)));
      }
    }

    std::vector<replicate_result> results(cfg.reps);
    parallel_for(cfg.reps, workers, [&](std::size_t rep) {
      const std::uint64_t seed = graph_seed(cfg.master_seed, n, rep);
      const auto sample = sample_graph(cfg.model, n, seed);
      auto& out = results[rep];
      out.value.assign(n_stats, std::nullopt);
      out.estimate.assign(n_stats, std::vector<std::optional<double>>(n_methods));
      for (std::size_t s = 0; s < n_stats; ++s) {
        try {
          out.value[s] = evaluate(sample.g, stats[s], resolve_rho(sample.g, stats[s]));
        } catch (const undefined_statistic_error&) {
          continue;
        } catch (const degenerate_input_error&) {
          continue;
        }
        for (std::size_t m = 0; m < n_methods; ++m) {
          try {
            out.estimate[s][m] = cfg.methods[m].estimate(sample.g, stats[s], replicate_seed(seed, 0x5ab5 + m));
          } catch (const undefined_statistic_error&) {
          } catch (const degenerate_input_error&) {
          } catch (const numerical_error&) {
          }
        }
      }
    });

    for (std::size_t s = 0; s < n_stats; ++s) {
      for (std::size_t m = 0; m < n_methods; ++m) {
        std::vector<double> values;
        std::vector<double> estimates;
        for (const auto& r : results) {
          if (r.value[s] && r.estimate[s][m]) {
            values.push_back(*r.value[s]);
            estimates.push_back(*r.estimate[s][m]);
          }
        }
        ratio_row row;
        row.n = n;
        row.stat = cfg.statistics[s];
        row.method = cfg.methods[m].label();
        row.b_frac = cfg.methods[m].frac();
        row.reps_used = values.size();
        const double true_var = values.size() >= 2 ? sample_variance(values) : 0.0;
        if (true_var > 0.0) {
          std::vector<double> ratios;
          ratios.reserve(estimates.size());
          for (double e : estimates) ratios.push_back(e / true_var);
          row.mean_ratio = mean(ratios);
          row.se_ratio = std::sqrt(sample_variance(ratios) / static_cast<double>(ratios.size()));
        } else {
          row.mean_ratio = std::nan("");
          row.se_ratio = std::nan("");
        }
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

struct timing_row {
  std::string method;
  std::optional<double> b_frac;
  double wall_seconds = 0.0;
  double var_hat = 0.0;
};

/// Wall-clock time of each variance method on the same graph, single-threaded.
/// Each method runs once untimed as a warm-up.
inline std::vector<timing_row> run_timing_benchmark(const graph& g, const statistic& stat,
                                                    const std::vector<method_spec>& methods, std::uint64_t seed = 1) {
  if (methods.empty()) throw argument_error("benchmark needs at least one method");
  std::vector<timing_row> rows;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const std::uint64_t method_seed = replicate_seed(seed, m);
    methods[m].estimate(g, stat, method_seed);
    const auto start = std::chrono::steady_clock::now();
    const double v = methods[m].estimate(g, stat, method_seed);
    const auto stop = std::chrono::steady_clock::now();
    rows.push_back({methods[m].label(), methods[m].frac(), std::chrono::duration<double>(stop - start).count(), v});
  }
  return rows;
}

} // namespace netjack
