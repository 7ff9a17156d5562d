// netjack: command-line front end for the network jackknife library.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netjack/netjack.hpp"

namespace {

using namespace netjack;

struct graph_input {
  std::string path;
  bool one_indexed = false;
  std::optional<std::size_t> nodes;
};

void add_graph_flags(CLI::App* cmd, graph_input& in, const std::string& flag = "--graph") {
  cmd->add_option(flag, in.path, "Edge-list file")->required();
  cmd->add_flag("--one-indexed", in.one_indexed, "Node ids in the file start at 1");
  cmd->add_option("--nodes", in.nodes, "Node universe size (covers isolated nodes)");
}

graph read_graph(const graph_input& in) {
  std::ifstream file(in.path);
  if (!file) throw io_error("cannot open '" + in.path + "'");
  auto result = load_edge_list(file, {in.one_indexed, in.nodes});
  if (result.dropped_lines > 0) {
    std::cerr << in.path << ": dropped " << result.dropped_lines << " duplicate or self-loop lines\n";
  }
  return std::move(result.g);
}

rho_mode parse_rho(const std::string& text) {
  if (text == "plugin") return rho_mode::plug_in();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw argument_error("bad --rho value '" + text + "'");
    return rho_mode::known(v);
  } catch (const std::logic_error&) {
    throw argument_error("bad --rho value '" + text + "'");
  }
}

/// Writes to `path`, or stdout when empty.
void output_table(const table& t, const std::string& path) {
  if (path.empty()) {
    write_csv(std::cout, t);
  } else {
    emit_table(t, path);
  }
}

graphon_model parse_model_arg(const std::string& text) {
  if (text.rfind("absdiff:", 0) == 0) return absdiff_model(std::stod(text.substr(8)));
  if (text.rfind("er:", 0) == 0) return sbm_model({{std::stod(text.substr(3))}}, {1.0});
  if (!text.empty() && text.front() == '{') return parse_model(nlohmann::json::parse(text)).first;
  if (std::filesystem::exists(text)) {
    std::ifstream file(text);
    return parse_model(nlohmann::json::parse(file)).first;
  }
  return parse_model(nlohmann::json(text)).first;
}

std::vector<method_spec> parse_methods(const std::string& text, std::size_t replicates) {
  std::vector<method_spec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "jackknife") {
      out.push_back(method_spec::jackknife());
    } else if (item == "jackknife-alt") {
      out.push_back(method_spec::jackknife_alt());
    } else if (item.rfind("subsample:", 0) == 0) {
      const double f = std::stod(item.substr(10));
      if (!(f > 0.0 && f <= 1.0)) throw argument_error("b fraction must lie in (0, 1]");
      out.push_back(method_spec::subsample(f, replicates));
    } else {
      throw argument_error("unknown method '" + item + "'");
    }
  }
  return out;
}

std::string opt(std::optional<double> v) { return v ? format_double(*v) : ""; }

int exit_code(const error& e) {
  switch (e.kind()) {
  case error::category::usage: return 1;
  case error::category::data: return 2;
  case error::category::numerical: return 3;
  }
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leave-node-out network jackknife: variance estimates, intervals and simulations"};
  app.require_subcommand(1);

  // simulate
  std::string model_text = "sbm3";
  std::size_t sim_n = 100;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Sample a graph from a graphon model to an edge-list file");
  simulate->add_option("--model", model_text, "sbm3 | gr2 | absdiff:<exponent> | er:<p> | JSON model block or file");
  simulate->add_option("--n", sim_n, "Number of nodes")->required();
  simulate->add_option("--seed", sim_seed, "Seed");
  simulate->add_option("--out", sim_out, "Output edge-list file (stdout if omitted)");

  // jackknife
  graph_input jk_graph;
  std::string jk_stat;
  std::string jk_rho = "plugin";
  bool jk_alt = false;
  std::string jk_out;
  auto* jk = app.add_subcommand("jackknife", "Leave-node-out jackknife variance of a statistic");
  add_graph_flags(jk, jk_graph);
  jk->add_option("--stat", jk_stat, "Statistic name")->required();
  jk->add_option("--rho", jk_rho, "Known rho in (0, 1] or 'plugin'");
  jk->add_flag("--alt", jk_alt, "Center at the full-graph value instead of the leave-one-out mean");
  jk->add_option("--out", jk_out, "CSV output (stdout if omitted)");

  // subsample
  graph_input ss_graph;
  std::string ss_stat;
  std::string ss_rho = "plugin";
  double ss_frac = 0.1;
  std::size_t ss_reps = default_subsample_replicates;
  std::uint64_t ss_seed = 1;
  std::string ss_out;
  auto* ss = app.add_subcommand("subsample", "Node-subsampling variance of a statistic");
  add_graph_flags(ss, ss_graph);
  ss->add_option("--stat", ss_stat, "Statistic name")->required();
  ss->add_option("--rho", ss_rho, "Known rho in (0, 1] or 'plugin'");
  ss->add_option("--b-frac", ss_frac, "Subsample size as a fraction of n")->required();
  ss->add_option("--B", ss_reps, "Number of subsamples");
  ss->add_option("--seed", ss_seed, "Seed");
  ss->add_option("--out", ss_out, "CSV output (stdout if omitted)");

  // ci
  graph_input ci_graph;
  std::string ci_stat;
  std::string ci_rho = "plugin";
  double ci_level = 0.95;
  bool ci_cheb = false;
  std::string ci_out;
  auto* ci = app.add_subcommand("ci", "Jackknife confidence interval");
  add_graph_flags(ci, ci_graph);
  ci->add_option("--stat", ci_stat, "Statistic name")->required();
  ci->add_option("--rho", ci_rho, "Known rho in (0, 1] or 'plugin'");
  ci->add_option("--level", ci_level, "Coverage level");
  ci->add_flag("--chebyshev", ci_cheb, "Chebyshev interval instead of the normal approximation");
  ci->add_option("--out", ci_out, "CSV output (stdout if omitted)");

  // split
  graph_input sp_graph;
  std::uint64_t sp_seed = 1;
  std::string sp_train, sp_test;
  auto* split = app.add_subcommand("split", "Random half split into training and test graphs");
  add_graph_flags(split, sp_graph);
  split->add_option("--seed", sp_seed, "Seed");
  split->add_option("--out-train", sp_train, "Training edge-list output")->required();
  split->add_option("--out-test", sp_test, "Test edge-list output")->required();

  // compare
  graph_input cmp_a, cmp_b;
  std::string cmp_stat;
  std::string cmp_rho = "plugin";
  double cmp_level = 0.975;
  bool cmp_cheb = false;
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "Compare two networks by jackknife interval overlap");
  compare->add_option("--graph-a", cmp_a.path, "First edge-list file")->required();
  compare->add_option("--graph-b", cmp_b.path, "Second edge-list file")->required();
  compare->add_flag("--one-indexed", cmp_a.one_indexed, "Node ids start at 1 (both files)");
  compare->add_option("--stat", cmp_stat, "Statistic name")->required();
  compare->add_option("--rho", cmp_rho, "Known rho in (0, 1] or 'plugin' (per graph)");
  compare->add_option("--level", cmp_level, "Coverage level of each interval");
  compare->add_flag("--chebyshev", cmp_cheb, "Chebyshev intervals");
  compare->add_option("--out", cmp_out, "CSV output (stdout if omitted)");

  // experiment
  std::string exp_config;
  std::string exp_out;
  std::string exp_svg;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo variance-ratio experiment from a JSON config");
  experiment->add_option("--config", exp_config, "JSON configuration file")->required();
  experiment->add_option("--out", exp_out, "CSV output (overrides the config)");
  experiment->add_option("--svg", exp_svg, "SVG plot output (overrides the config)");

  // bench
  graph_input bench_graph;
  std::string bench_stat;
  std::string bench_rho = "plugin";
  std::string bench_methods = "jackknife,subsample:0.05,subsample:0.1,subsample:0.2";
  std::size_t bench_reps = default_subsample_replicates;
  std::uint64_t bench_seed = 1;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Time variance methods on one graph");
  add_graph_flags(bench, bench_graph);
  bench->add_option("--stat", bench_stat, "Statistic name")->required();
  bench->add_option("--rho", bench_rho, "Known rho in (0, 1] or 'plugin'");
  bench->add_option("--methods", bench_methods, "Comma list: jackknife, jackknife-alt, subsample:<b_frac>");
  bench->add_option("--B", bench_reps, "Subsamples per subsampling method");
  bench->add_option("--seed", bench_seed, "Seed");
  bench->add_option("--out", bench_out, "CSV output (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*simulate) {
      const auto sample = sample_graph(parse_model_arg(model_text), sim_n, sim_seed);
      if (sim_out.empty()) {
        write_edge_list(std::cout, sample.g);
      } else {
        std::ofstream out(sim_out);
        if (!out) throw io_error("cannot open '" + sim_out + "' for writing");
        write_edge_list(out, sample.g);
      }
    } else if (*jk) {
      const graph g = read_graph(jk_graph);
      const auto stat = statistic::parse(jk_stat, parse_rho(jk_rho));
      const auto est = jk_alt ? jackknife_alternative(g, stat) : jackknife(g, stat);
      table t{{"method", "stat", "n", "rho", "b", "B", "var_hat", "scaled_var"}, {}};
      t.rows.push_back({jk_alt ? "jackknife-alt" : "jackknife", stat.name(), std::to_string(est.n),
                        format_double(est.loo.rho_used), "", "", format_double(est.var_hat),
                        format_double(est.scaled_var)});
      output_table(t, jk_out);
    } else if (*ss) {
      const graph g = read_graph(ss_graph);
      if (!(ss_frac > 0.0 && ss_frac <= 1.0)) throw argument_error("--b-frac must lie in (0, 1]");
      const auto stat = statistic::parse(ss_stat, parse_rho(ss_rho));
      const auto b = method_spec::subsample(ss_frac, ss_reps).subsample_size(g.num_nodes());
      const auto est = subsample_variance(g, stat, b, ss_reps, ss_seed);
      if (est.dropped > 0) std::cerr << "dropped " << est.dropped << " subsamples with an undefined statistic\n";
      table t{{"method", "stat", "n", "rho", "b", "B", "var_hat", "scaled_var"}, {}};
      t.rows.push_back({"subsample", stat.name(), std::to_string(g.num_nodes()), format_double(est.rho_used),
                        std::to_string(b), std::to_string(ss_reps), format_double(est.var_hat),
                        format_double(static_cast<double>(g.num_nodes()) * est.var_hat)});
      output_table(t, ss_out);
    } else if (*ci) {
      const graph g = read_graph(ci_graph);
      const auto stat = statistic::parse(ci_stat, parse_rho(ci_rho));
      const auto est = jackknife(g, stat);
      const auto iv = interval(est.loo.full_value, est.var_hat, ci_level,
                               ci_cheb ? interval_method::chebyshev : interval_method::normal);
      table t{{"graph", "stat", "center", "var_hat", "lower", "upper", "level"}, {}};
      t.rows.push_back({ci_graph.path, stat.name(), format_double(iv.center), format_double(est.var_hat),
                        format_double(iv.lower), format_double(iv.upper), format_double(iv.level)});
      output_table(t, ci_out);
    } else if (*split) {
      const graph g = read_graph(sp_graph);
      const auto parts = split_train_test(g, sp_seed);
      for (const auto& [path, part] : {std::pair{sp_train, &parts.train}, std::pair{sp_test, &parts.test}}) {
        std::ofstream out(path);
        if (!out) throw io_error("cannot open '" + path + "' for writing");
        write_edge_list(out, *part);
      }
    } else if (*compare) {
      cmp_b.one_indexed = cmp_a.one_indexed;
      const graph ga = read_graph(cmp_a);
      const graph gb = read_graph(cmp_b);
      const auto stat = statistic::parse(cmp_stat, parse_rho(cmp_rho));
      const auto v = two_sample_compare(ga, gb, stat, cmp_level,
                                        cmp_cheb ? interval_method::chebyshev : interval_method::normal);
      table t{{"graph", "stat", "center", "var_hat", "lower", "upper", "level", "disjoint", "implied_test_level"}, {}};
      const auto row = [&](const std::string& name, const confidence_interval& iv, double var) {
        t.rows.push_back({name, stat.name(), format_double(iv.center), format_double(var), format_double(iv.lower),
                          format_double(iv.upper), format_double(iv.level), v.disjoint ? "true" : "false",
                          format_double(v.implied_test_level)});
      };
      row(cmp_a.path, v.ci_a, v.var_a);
      row(cmp_b.path, v.ci_b, v.var_b);
      output_table(t, cmp_out);
    } else if (*experiment) {
      std::ifstream file(exp_config);
      if (!file) throw io_error("cannot open '" + exp_config + "'");
      std::stringstream buffer;
      buffer << file.rdbuf();
      auto cfg = parse_config(buffer.str());
      if (!exp_out.empty()) cfg.output_path = exp_out;
      if (!exp_svg.empty()) cfg.svg_path = exp_svg;
      const auto report = run_ratio_experiment(cfg, worker_count());
      if (cfg.output_path.empty()) {
        write_csv(std::cout, ratio_table(report));
      } else {
        emit_report(report, cfg.output_path, report_format::csv);
      }
      if (!cfg.svg_path.empty()) emit_report(report, cfg.svg_path, report_format::svg);
    } else if (*bench) {
      const graph g = read_graph(bench_graph);
      const auto stat = statistic::parse(bench_stat, parse_rho(bench_rho));
      const auto rows = run_timing_benchmark(g, stat, parse_methods(bench_methods, bench_reps), bench_seed);
      table t{{"method", "b_frac", "wall_seconds", "var_hat"}, {}};
      for (const auto& r : rows) {
        t.rows.push_back({r.method, opt(r.b_frac), format_double(r.wall_seconds), format_double(r.var_hat)});
      }
      output_table(t, bench_out);
    }
  } catch (const error& e) {
    std::cerr << "netjack: " << e.what() << '\n';
    return exit_code(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "netjack: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "netjack: invalid argument: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "netjack: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
