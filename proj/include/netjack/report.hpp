#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "netjack/error.hpp"

namespace netjack {

/// One cell of a ratio experiment. mean_ratio and se_ratio are NaN when the
/// cell has no usable variance (true_var == 0 or fewer than 2 replicates).
struct ratio_row {
  std::size_t n = 0;
  std::string stat;
  std::string method;
  std::optional<double> b_frac;
  double mean_ratio = 0.0;
  double se_ratio = 0.0;
  std::size_t reps_used = 0;
};

struct ratio_report {
  std::vector<ratio_row> rows;
};

/// Plain header + rows table, used for every CSV the CLI writes.
struct table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Shortest round-trip is not wanted here: always 17 significant digits.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_csv(std::ostream& out, const table& t) {
  const auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << csv_field(fields[i]);
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

inline table ratio_table(const ratio_report& report) {
  table t;
  t.header = {"n", "stat", "method", "b_frac", "mean_ratio", "se_ratio", "reps_used"};
  for (const auto& r : report.rows) {
    t.rows.push_back({std::to_string(r.n), r.stat, r.method, r.b_frac ? format_double(*r.b_frac) : "",
                      format_double(r.mean_ratio), format_double(r.se_ratio), std::to_string(r.reps_used)});
  }
  return t;
}

/// Line plot of mean_ratio ± 2 se against n, one series per (stat, method, b_frac),
/// with a dashed reference line at ratio 1.
inline void write_ratio_svg(std::ostream& out, const ratio_report& report) {
  constexpr double width = 720, height = 440, left = 70, right = 200, top = 30, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  using key = std::tuple<std::string, std::string, double>;
  std::map<key, std::vector<const ratio_row*>> series;
  double n_min = 1e300, n_max = -1e300, y_min = 0.0, y_max = 1.5;
  for (const auto& r : report.rows) {
    if (std::isnan(r.mean_ratio)) continue;
    series[{r.stat, r.method, r.b_frac.value_or(-1.0)}].push_back(&r);
    n_min = std::min(n_min, static_cast<double>(r.n));
    n_max = std::max(n_max, static_cast<double>(r.n));
    y_min = std::min(y_min, r.mean_ratio - 2 * r.se_ratio);
    y_max = std::max(y_max, r.mean_ratio + 2 * r.se_ratio);
  }
  if (n_min > n_max) {
    n_min = 0;
    n_max = 1;
  }
  const auto sx = [&](double n) {
    return n_max == n_min ? left + plot_w / 2 : left + (n - n_min) / (n_max - n_min) * plot_w;
  };
  const auto sy = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };
  const auto num = [](double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  out << "<line class=\"reference\" x1=\"" << left << "\" y1=\"" << num(sy(1.0)) << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << num(sy(1.0)) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">n</text>\n";
  out << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" transform=\"rotate(-90 16 " << top + plot_h / 2
      << ")\" text-anchor=\"middle\">variance ratio</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << num(sy(y_max) + 4) << "\" text-anchor=\"end\">" << num(y_max)
      << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << num(sy(y_min) + 4) << "\" text-anchor=\"end\">" << num(y_min)
      << "</text>\n";

  std::size_t index = 0;
  for (const auto& [k, rows] : series) {
    const char* color = palette[index % std::size(palette)];
    out << "<g class=\"series\">\n<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << (i ? " " : "") << num(sx(static_cast<double>(rows[i]->n))) << ',' << num(sy(rows[i]->mean_ratio));
    }
    out << "\"/>\n";
    for (const auto* r : rows) {
      const double x = sx(static_cast<double>(r->n));
      out << "<line class=\"errorbar\" x1=\"" << num(x) << "\" y1=\"" << num(sy(r->mean_ratio - 2 * r->se_ratio))
          << "\" x2=\"" << num(x) << "\" y2=\"" << num(sy(r->mean_ratio + 2 * r->se_ratio)) << "\" stroke=\"" << color
          << "\"/>\n";
      out << "<circle class=\"marker\" cx=\"" << num(x) << "\" cy=\"" << num(sy(r->mean_ratio)) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
    }
    std::string label = std::get<0>(k) + " " + std::get<1>(k);
    if (std::get<2>(k) >= 0) label += " b=" + num(std::get<2>(k)) + "n";
    out << "<text x=\"" << left + plot_w + 10 << "\" y=\"" << top + 16 * (index + 1) << "\" fill=\"" << color
        << "\">" << label << "</text>\n</g>\n";
    ++index;
  }
  out << "</svg>\n";
}

enum class report_format { csv, svg };

/// Writes `report` to `path`. CSV: fixed header, LF endings, 17 significant digits.
inline void emit_report(const ratio_report& report, const std::string& path, report_format format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  if (format == report_format::csv) {
    write_csv(out, ratio_table(report));
  } else {
    write_ratio_svg(out, report);
  }
  if (!out) throw io_error("failed writing '" + path + "'");
}

inline void emit_table(const table& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_csv(out, t);
  if (!out) throw io_error("failed writing '" + path + "'");
}

} // namespace netjack
