#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netjack {

/// Base of every error raised by the library. The category drives CLI exit codes.
class error : public std::runtime_error {
public:
  enum class category { usage, data, numerical };

  error(category cat, const std::string& what) : std::runtime_error(what), category_(cat) {}

  category kind() const noexcept { return category_; }

private:
  category category_;
};

/// Invalid argument supplied by the caller (bad ids, malformed model, bad ranges).
class argument_error : public error {
public:
  explicit argument_error(const std::string& what) : error(category::usage, what) {}
};

/// Configuration file problem; names the offending field.
class config_error : public error {
public:
  config_error(std::string field, const std::string& what)
      : error(category::usage, "config field '" + field + "': " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Malformed edge-list content.
class parse_error : public error {
public:
  parse_error(std::size_t line, const std::string& what)
      : error(category::data, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Well-formed input whose content is unusable (negative ids, inconsistent headers).
class input_error : public error {
public:
  explicit input_error(const std::string& what) : error(category::data, what) {}
};

/// The graph is too small for the requested operation.
class degenerate_input_error : public error {
public:
  explicit degenerate_input_error(const std::string& what) : error(category::data, what) {}
};

/// The statistic has no value on this graph (e.g. transitivity without two-stars).
class undefined_statistic_error : public error {
public:
  explicit undefined_statistic_error(const std::string& what) : error(category::data, what) {}
};

class io_error : public error {
public:
  explicit io_error(const std::string& what) : error(category::data, what) {}
};

/// Iterative solver failed to reach its tolerance.
class numerical_error : public error {
public:
  numerical_error(const std::string& what, double residual)
      : error(category::numerical, what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

} // namespace netjack
