#include "epmono/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace epmono::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

double parse_real(std::string_view text, const std::string& key) {
  const auto v = to_double(trim(text));
  if (!v) throw ConfigError(key, "expected a real number, got \"" + std::string(text) + "\"");
  return *v;
}

Complex parse_complex(std::string_view text, const std::string& key) {
  const std::string_view s = trim(text);
  auto fail = [&]() -> Complex {
    throw ConfigError(key, "malformed complex literal \"" + std::string(text) + "\" (expected a+bi)");
  };
  if (s.empty()) return fail();
  if (s.back() != 'i') {
    const auto v = to_double(s);
    return v ? Complex{*v, 0.0} : fail();
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  // split at the last sign that is not leading and not part of an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](std::string_view b) -> std::optional<double> {
    if (b.empty() || b == "+") return 1.0;
    if (b == "-") return -1.0;
    return to_double(b);
  };
  if (split == std::string_view::npos) {
    const auto im = imag_part(body);
    return im ? Complex{0.0, *im} : fail();
  }
  const auto re = to_double(body.substr(0, split));
  const auto im = imag_part(body.substr(split));
  if (!re || !im) return fail();
  return {*re, *im};
}

int parse_count(std::string_view text, const std::string& key) {
  const std::string_view s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(key, "expected an integer, got \"" + std::string(text) + "\"");
  return v;
}

double GridAxisSpec::at(int i) const noexcept {
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    if (value.empty()) throw ConfigError(key, "empty value");

    if (key == "scenario") {
      cfg.scenario = value;
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "format") {
      if (value != "csv" && value != "json") throw ConfigError(key, "format must be csv or json");
      cfg.format = value;
    } else if (key == "workers") {
      cfg.workers = parse_count(value, key);
      if (cfg.workers < 1) throw ConfigError(key, "workers must be at least 1");
    } else if (key.rfind("grid.", 0) == 0) {
      GridAxisSpec axis;
      axis.name = key.substr(5);
      if (axis.name.empty()) throw ConfigError(key, "grid axis needs a parameter name");
      const auto c1 = value.find(':');
      const auto c2 = c1 == std::string::npos ? std::string::npos : value.find(':', c1 + 1);
      if (c2 == std::string::npos || value.find(':', c2 + 1) != std::string::npos)
        throw ConfigError(key, "grid axis must be min:max:count");
      axis.min = parse_real(std::string_view(value).substr(0, c1), key);
      axis.max = parse_real(std::string_view(value).substr(c1 + 1, c2 - c1 - 1), key);
      axis.count = parse_count(std::string_view(value).substr(c2 + 1), key);
      if (axis.count < 2) throw ConfigError(key, "grid count must be at least 2");
      cfg.grid.push_back(axis);
    } else {
      cfg.parameters.emplace_back(key, value);
    }
    if (end == text.size()) break;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace epmono::cli
