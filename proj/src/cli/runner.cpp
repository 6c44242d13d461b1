#include "epmono/cli/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

#include "json.hpp"

#ifndef EPMONO_VERSION
#define EPMONO_VERSION "unknown"
#endif

namespace epmono::cli {

double ParamSet::real(const std::string& name) const { return complex(name).real(); }

Complex ParamSet::complex(const std::string& name) const {
  const auto it = numbers_.find(name);
  if (it == numbers_.end()) throw std::logic_error("no numeric parameter " + name);
  return it->second;
}

const std::string& ParamSet::text(const std::string& name) const {
  const auto it = text_.find(name);
  if (it == text_.end()) throw std::logic_error("no text parameter " + name);
  return it->second;
}

void ParamSet::set_axis(const std::string& axis, double v) {
  const auto dot = axis.rfind('.');
  if (dot != std::string::npos && (axis.substr(dot) == ".re" || axis.substr(dot) == ".im")) {
    Complex& c = numbers_.at(axis.substr(0, dot));
    c = axis.substr(dot) == ".re" ? Complex{v, c.imag()} : Complex{c.real(), v};
  } else {
    numbers_.at(axis) = v;
  }
}

std::string version_string() { return EPMONO_VERSION; }

std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_number(c.real());
  return format_number(c.real()) + (c.imag() < 0 ? "" : "+") + format_number(c.imag()) + "i";
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

const ParamSpec* find_param(const Scenario& s, const std::string& name) {
  for (const ParamSpec& p : s.params)
    if (p.name == name) return &p;
  return nullptr;
}

// Parameter the axis sweeps, checking the axis suffix fits its kind.
std::string axis_parameter(const Scenario& s, const std::string& axis) {
  const std::string key = "grid." + axis;
  std::string base = axis;
  bool part = false;
  const auto dot = axis.rfind('.');
  if (dot != std::string::npos && (axis.substr(dot) == ".re" || axis.substr(dot) == ".im")) {
    base = axis.substr(0, dot);
    part = true;
  }
  const ParamSpec* p = find_param(s, base);
  if (!p) throw ConfigError(key, "no parameter '" + base + "' in scenario " + s.name);
  if (p->kind == ParamKind::Text) throw ConfigError(key, "'" + base + "' is not numeric");
  if (p->kind == ParamKind::Complex && !part)
    throw ConfigError(key, "'" + base + "' is complex; sweep " + base + ".re or " + base + ".im");
  if (p->kind == ParamKind::Real && part) throw ConfigError(key, "'" + base + "' is real");
  return base;
}

std::size_t cell_count(const std::vector<GridAxisSpec>& grid) {
  std::size_t n = 1;
  for (const auto& a : grid) n *= static_cast<std::size_t>(a.count);
  return n;
}

ParamSet cell_params(const ResolvedConfig& cfg, std::size_t index) {
  ParamSet p = cfg.base;
  for (std::size_t k = cfg.grid.size(); k-- > 0;) {
    const auto& a = cfg.grid[k];
    p.set_axis(a.name, a.at(static_cast<int>(index % a.count)));
    index /= a.count;
  }
  return p;
}

std::size_t value_width(const Scenario& s) {
  std::size_t n = 0;
  for (const auto& c : s.columns) n += c.complex ? 2 : 1;
  return n;
}

}  // namespace

ResolvedConfig resolve(const RunConfig& cfg, const std::string& scenario_name) {
  std::string name = scenario_name.empty() ? cfg.scenario : scenario_name;
  if (!scenario_name.empty() && !cfg.scenario.empty() && cfg.scenario != scenario_name)
    throw ConfigError("scenario", "config names '" + cfg.scenario + "' but '" + scenario_name + "' was requested");
  if (name.empty()) throw ConfigError("scenario", "no scenario given");

  ResolvedConfig r;
  r.scenario = find_scenario(name);
  if (!r.scenario) {
    std::vector<std::string> names;
    for (const auto& s : scenarios()) names.push_back(s.name);
    throw ConfigError("scenario", "unknown scenario '" + name + "' (known: " + join(names) + ")");
  }
  const Scenario& sc = *r.scenario;

  std::map<std::string, std::string> given;
  for (const auto& [k, v] : cfg.parameters) {
    if (!find_param(sc, k)) throw ConfigError(k, "not a parameter of scenario " + sc.name);
    given[k] = v;
  }
  for (const ParamSpec& p : sc.params) {
    const auto it = given.find(p.name);
    const std::string text = it == given.end() ? p.default_value : it->second;
    switch (p.kind) {
      case ParamKind::Real:
        r.base.set(p.name, parse_real(text, p.name));
        break;
      case ParamKind::Complex:
        r.base.set(p.name, parse_complex(text, p.name));
        break;
      case ParamKind::Text:
        if (std::find(p.choices.begin(), p.choices.end(), text) == p.choices.end())
          throw ConfigError(p.name, "'" + text + "' is not one of " + join(p.choices));
        r.base.set_text(p.name, text);
        break;
    }
    r.echo.emplace_back(p.name, text);
  }

  if (!cfg.grid.empty() && !sc.grid_allowed) throw ConfigError("grid", "scenario " + sc.name + " takes no grid");
  std::set<std::string> swept;
  for (const GridAxisSpec& a : cfg.grid) {
    const std::string base = axis_parameter(sc, a.name);
    // a fixed complex value supplies the part that is not swept
    if (given.count(base) && base == a.name) throw ConfigError("grid." + a.name, "'" + base + "' is also fixed by a key");
    if (!swept.insert(a.name).second) throw ConfigError("grid." + a.name, "axis given twice");
  }
  r.grid = cfg.grid;

  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format", "must be csv or json");
  if (cfg.workers < 1) throw ConfigError("workers", "must be at least 1");
  r.output = cfg.output;
  r.format = cfg.format;
  r.workers = cfg.workers;

  // Cross-parameter checks at every corner of the grid box.
  if (sc.check) {
    const std::size_t corners = std::size_t{1} << r.grid.size();
    for (std::size_t c = 0; c < corners; ++c) {
      ParamSet p = r.base;
      for (std::size_t k = 0; k < r.grid.size(); ++k)
        p.set_axis(r.grid[k].name, (c >> k) & 1 ? r.grid[k].max : r.grid[k].min);
      sc.check(p);
    }
  }
  return r;
}

ResultTable run(const ResolvedConfig& cfg, int workers) {
  const Scenario& sc = *cfg.scenario;
  ResultTable t;
  t.provenance.emplace_back("version", version_string());
  t.provenance.emplace_back("scenario", sc.name);
  for (const auto& [k, v] : cfg.echo) t.provenance.emplace_back("param." + k, v);
  for (const auto& a : cfg.grid)
    t.provenance.emplace_back("grid." + a.name,
                              format_number(a.min) + ":" + format_number(a.max) + ":" + std::to_string(a.count));

  for (const auto& a : cfg.grid) t.columns.push_back(a.name);
  for (const auto& c : sc.columns) {
    if (c.complex) {
      t.columns.push_back(c.name + ".re");
      t.columns.push_back(c.name + ".im");
    } else {
      t.columns.push_back(c.name);
    }
  }

  if (sc.table) {
    try {
      t.rows = sc.table(cfg.base);
    } catch (const Error& e) {
      throw ScenarioError(e.kind(), 0, e.what());
    }
    return t;
  }
  t.columns.push_back("singular");

  const std::size_t n = cell_count(cfg.grid);
  const std::size_t width = value_width(sc);
  t.rows.assign(n, {});
  std::vector<ParamSet> cells(n);
  for (std::size_t i = 0; i < n; ++i) cells[i] = cell_params(cfg, i);

  const bool batched = sc.batch && std::all_of(cfg.grid.begin(), cfg.grid.end(), [&](const GridAxisSpec& a) {
                         return std::find(sc.batch_axes.begin(), sc.batch_axes.end(), a.name) != sc.batch_axes.end();
                       });

  std::mutex mu;
  std::optional<ScenarioError> first;
  auto fail = [&](std::size_t i, const Error& e) {
    std::lock_guard<std::mutex> lock(mu);
    if (!first || i < first->cell()) first.emplace(e.kind(), i, e.what());
  };

  auto finish_row = [&](std::size_t i, std::vector<double> values) {
    std::vector<double>& row = t.rows[i];
    row.reserve(cfg.grid.size() + width + 1);
    for (const auto& a : cfg.grid) {
      const std::string& name = a.name;
      const auto dot = name.rfind('.');
      if (dot != std::string::npos && (name.substr(dot) == ".re" || name.substr(dot) == ".im")) {
        const Complex c = cells[i].complex(name.substr(0, dot));
        row.push_back(name.substr(dot) == ".re" ? c.real() : c.imag());
      } else {
        row.push_back(cells[i].real(name));
      }
    }
    double singular = values.size() > width ? values.back() : 0.0;
    values.resize(width);
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
      std::fill(values.begin(), values.end(), 0.0);
      singular = 1.0;
    }
    row.insert(row.end(), values.begin(), values.end());
    row.push_back(singular);
  };

  auto eval = [&](std::size_t begin, std::size_t end) {
    if (batched) {
      std::vector<ParamSet> chunk(cells.begin() + begin, cells.begin() + end);
      try {
        auto rows = sc.batch(chunk);
        for (std::size_t i = begin; i < end; ++i) finish_row(i, std::move(rows[i - begin]));
        return;
      } catch (const Error&) {
        // fall through to per-cell evaluation for exact error reporting
      }
    }
    for (std::size_t i = begin; i < end; ++i) {
      try {
        finish_row(i, sc.cell(cells[i]));
      } catch (const Error& e) {
        if (std::find(sc.flagged.begin(), sc.flagged.end(), e.kind()) == sc.flagged.end()) {
          fail(i, e);
          continue;
        }
        std::vector<double> zero(width, 0.0);
        zero.push_back(1.0);
        finish_row(i, std::move(zero));
      }
    }
  };

  const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(n, 1));
  if (w == 1) {
    eval(0, n);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < w; ++k) pool.emplace_back(eval, n * k / w, n * (k + 1) / w);
    for (auto& th : pool) th.join();
  }
  if (first) throw *first;
  return t;
}

void write_csv(const ResultTable& t, std::ostream& out) {
  for (const auto& [k, v] : t.provenance) out << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_json(const ResultTable& t, std::ostream& out) {
  auto str = [](const std::string& s) { return nlohmann::json(s).dump(); };
  out << "{\n  \"provenance\": {";
  for (std::size_t i = 0; i < t.provenance.size(); ++i)
    out << (i ? ",\n    " : "\n    ") << str(t.provenance[i].first) << ": " << str(t.provenance[i].second);
  out << "\n  },\n  \"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? ", " : "") << str(t.columns[i]);
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      const double v = t.rows[r][i];
      out << (i ? ", " : "") << (std::isfinite(v) ? format_number(v) : "null");
    }
    out << ']';
  }
  out << (t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void describe(const ResolvedConfig& cfg, std::ostream& out) {
  const Scenario& sc = *cfg.scenario;
  out << "scenario: " << sc.name << "\n  " << sc.summary << "\nparameters:\n";
  for (const auto& [k, v] : cfg.echo) {
    const ParamSpec* p = find_param(sc, k);
    out << "  " << k << " = ";
    if (p->kind == ParamKind::Text) out << v;
    else if (p->kind == ParamKind::Complex) out << format_complex(cfg.base.complex(k));
    else out << format_number(cfg.base.real(k));
    out << '\n';
  }
  if (cfg.grid.empty()) {
    out << "grid: none (single point)\n";
  } else {
    out << "grid: " << cell_count(cfg.grid) << " cells\n";
    for (const auto& a : cfg.grid)
      out << "  " << a.name << " = " << format_number(a.min) << " .. " << format_number(a.max) << " (" << a.count
          << ")\n";
  }
  if (sc.derived) {
    out << "derived at the base point:\n";
    try {
      for (const auto& [k, v] : sc.derived(cfg.base)) out << "  " << k << ": " << v << '\n';
    } catch (const Error& e) {
      out << "  unavailable: " << e.what() << '\n';
    }
  }
  if (!sc.flagged.empty()) {
    out << "flagged as singular rows:";
    for (ErrorKind k : sc.flagged) out << ' ' << to_string(k);
    out << '\n';
  }
  out << "output: " << (cfg.output.empty() ? "stdout" : cfg.output) << " (" << cfg.format << ")\n";
}

}  // namespace epmono::cli
