// epmono: evaluate phase and monopole scenarios over parameter grids.
//
//   epmono <scenario> --config run.conf [--out file] [--format csv|json] [--workers N]
//   epmono run --config run.conf          (scenario taken from the file)
//   epmono validate --config run.conf     (report only, nothing evaluated)
//   epmono list
//
// Exit status: 0 ok, 1 usage, 2 configuration error, 3 domain error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "epmono/cli/runner.hpp"

using namespace epmono::cli;

namespace {

void list(std::ostream& out) {
  for (const Scenario& s : scenarios()) {
    out << s.name << "\n  " << s.summary << "\n  params:";
    for (const ParamSpec& p : s.params) {
      out << ' ' << p.name << '=' << p.default_value;
      if (!p.choices.empty()) {
        out << " {";
        for (std::size_t i = 0; i < p.choices.size(); ++i) out << (i ? "|" : "") << p.choices[i];
        out << '}';
      }
    }
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate geometric-phase and monopole scenarios over parameter grids"};
  app.set_version_flag("--version", version_string());
  std::string command, config, out, format;
  int workers = 0;
  std::vector<std::string> overrides;
  app.add_option("command", command, "scenario name, or run / validate / list")->required();
  app.add_option("-c,--config", config, "run configuration file");
  app.add_option("-o,--out", out, "output file (default: config 'output' or stdout)");
  app.add_option("-f,--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-w,--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("-s,--set", overrides, "override a parameter, key=value");
  CLI11_PARSE(app, argc, argv);

  if (command == "list") {
    list(std::cout);
    return 0;
  }
  if (config.empty()) {
    std::cerr << "epmono: --config is required for '" << command << "'\n";
    return 1;
  }

  ResolvedConfig cfg;
  try {
    RunConfig rc = load_config(config);
    for (const std::string& o : overrides) {
      const RunConfig one = parse_config(o);
      if (one.parameters.size() + one.grid.size() != 1)
        throw ConfigError(o, "--set takes one parameter or grid.<name> assignment");
      for (const auto& kv : one.parameters) {
        auto it = std::find_if(rc.parameters.begin(), rc.parameters.end(),
                               [&](const auto& p) { return p.first == kv.first; });
        if (it == rc.parameters.end()) rc.parameters.push_back(kv);
        else it->second = kv.second;
      }
      for (const auto& ax : one.grid) {
        auto it = std::find_if(rc.grid.begin(), rc.grid.end(), [&](const auto& g) { return g.name == ax.name; });
        if (it == rc.grid.end()) rc.grid.push_back(ax);
        else *it = ax;
      }
    }
    if (!format.empty()) rc.format = format;
    if (workers > 0) rc.workers = workers;
    if (!out.empty()) rc.output = out;
    const bool named = command != "run" && command != "validate";
    cfg = resolve(rc, named ? command : std::string{});
  } catch (const ConfigError& e) {
    std::cerr << "epmono: configuration error: " << e.what() << '\n';
    return 2;
  }

  if (command == "validate") {
    describe(cfg, std::cout);
    return 0;
  }

  ResultTable table;
  try {
    table = run(cfg, cfg.workers);
  } catch (const ScenarioError& e) {
    std::cerr << "epmono: " << to_string(e.kind()) << " at grid cell " << e.cell() << ": " << e.what() << '\n';
    return 3;
  } catch (const epmono::Error& e) {
    std::cerr << "epmono: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 3;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "epmono: cannot write " << cfg.output << '\n';
      return 1;
    }
  }
  std::ostream& sink = cfg.output.empty() ? std::cout : file;
  if (cfg.format == "json") write_json(table, sink);
  else write_csv(table, sink);
  return 0;
}
