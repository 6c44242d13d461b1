#pragma once

// Scenario registry, grid runner and table serialisation behind the epmono
// command-line tool.

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "epmono/cli/config.hpp"
#include "epmono/errors.hpp"

namespace epmono::cli {

enum class ParamKind { Real, Complex, Text };

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::Real;
  std::string default_value;
  std::vector<std::string> choices;  // Text only
};

class ParamSet {
 public:
  double real(const std::string& name) const;
  Complex complex(const std::string& name) const;
  const std::string& text(const std::string& name) const;

  void set(const std::string& name, Complex v) { numbers_[name] = v; }
  void set_text(const std::string& name, std::string v) { text_[name] = std::move(v); }
  /// Grid override: "<name>", "<name>.re" or "<name>.im".
  void set_axis(const std::string& axis, double v);

 private:
  std::map<std::string, Complex> numbers_;
  std::map<std::string, std::string> text_;
};

struct ColumnSpec {
  std::string name;
  bool complex = false;
};

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Scenario {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::vector<ColumnSpec> columns;
  /// Domain errors turned into a flagged row (singular = 1, values 0).
  std::vector<ErrorKind> flagged;
  bool grid_allowed = true;
  std::function<std::vector<double>(const ParamSet&)> cell;
  /// Whole-grid evaluation; must agree with `cell` for every row. Only used
  /// when every grid axis is listed in batch_axes.
  std::function<std::vector<std::vector<double>>(const std::vector<ParamSet>&)> batch;
  std::vector<std::string> batch_axes;
  /// Non-grid scenarios produce their own rows.
  std::function<std::vector<std::vector<double>>(const ParamSet&)> table;
  /// Cross-parameter checks; throw ConfigError.
  std::function<void(const ParamSet&)> check;
  /// Derived quantities for `validate`.
  std::function<std::vector<std::pair<std::string, std::string>>(const ParamSet&)> derived;
};

const std::vector<Scenario>& scenarios();
const Scenario* find_scenario(const std::string& name);

struct ResolvedConfig {
  const Scenario* scenario = nullptr;
  ParamSet base;
  std::vector<std::pair<std::string, std::string>> echo;  // every parameter, resolved text
  std::vector<GridAxisSpec> grid;
  std::string output;
  std::string format = "csv";
  int workers = 1;
};

/// Applies scenario defaults and checks keys, literals and grid axes.
/// `scenario_name` overrides (and must agree with) a `scenario` key.
ResolvedConfig resolve(const RunConfig& cfg, const std::string& scenario_name = {});

/// Domain failure in a grid cell that the scenario does not flag.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(ErrorKind kind, std::size_t cell, const std::string& what)
      : std::runtime_error(what), kind_(kind), cell_(cell) {}
  ErrorKind kind() const noexcept { return kind_; }
  std::size_t cell() const noexcept { return cell_; }

 private:
  ErrorKind kind_;
  std::size_t cell_;
};

std::string version_string();

/// Evaluates the grid (row-major in axis declaration order) on `workers`
/// threads; the table does not depend on the worker count.
ResultTable run(const ResolvedConfig& cfg, int workers = 1);

/// 17 significant digits, shortest exponent form, '.' separator.
std::string format_number(double v);
/// "a", "a+bi" or "a-bi" in the same style as the config literals.
std::string format_complex(Complex c);
void write_csv(const ResultTable& t, std::ostream& out);
void write_json(const ResultTable& t, std::ostream& out);

/// Human-readable diagnostics for `validate`.
void describe(const ResolvedConfig& cfg, std::ostream& out);

}  // namespace epmono::cli
