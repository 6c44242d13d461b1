#pragma once

// Run configuration: flat `key = value` files with `#` comments, grid axes as
// `grid.<name> = min:max:count`, complex literals written "a+bi".

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "epmono/calg.hpp"

namespace epmono::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Strict decimal parse of the whole string; throws ConfigError naming key.
double parse_real(std::string_view text, const std::string& key);
/// "a", "a+bi", "a-bi", "bi", "i" with optional exponents.
Complex parse_complex(std::string_view text, const std::string& key);
int parse_count(std::string_view text, const std::string& key);

struct GridAxisSpec {
  std::string name;  // a real parameter, or "<complex>.re" / "<complex>.im"
  double min = 0.0, max = 0.0;
  int count = 2;
  double at(int i) const noexcept;
};

struct RunConfig {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> parameters;  // declaration order
  std::vector<GridAxisSpec> grid;
  std::string output;
  std::string format = "csv";
  int workers = 1;
};

/// Syntax-level parse. Scenario-specific key checks happen in resolve().
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace epmono::cli
