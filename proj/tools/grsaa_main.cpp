// grsaa <solve|sweep-l|compare|diagnose-coercivity> [--config FILE] [--<key> VALUE]...
//
// Settings are applied in order: built-in defaults, the --config file, then
// flags. Every config key is also a flag (--N 10000, --partition linear:500).

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grsaa/errors.hpp"
#include "grsaa/experiment.hpp"

namespace {

struct Command {
  const char* name;
  const char* help;
  int (*run)(const grsaa::RunConfig&, std::ostream&);
};

const Command kCommands[] = {
    {"solve", "trace one homotopy and write path.csv, summary.json, config.txt", grsaa::cmd_solve},
    {"sweep-l", "sample evaluations over the sweep_L list of group counts", grsaa::cmd_sweep_L},
    {"compare", "GRSAA at L against the standard homotopy (L = 1) on the same samples", grsaa::cmd_compare},
    {"diagnose-coercivity", "check (x - x0)^T f(x, xi) > 0 on the domain boundary", grsaa::cmd_diagnose_coercivity},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradually reinforced sample average homotopy solver"};
  app.require_subcommand(1);

  std::string config_file;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> sets;
  const Command* chosen = nullptr;

  for (const auto& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_file, "key = value config file");
    for (const auto& key : grsaa::RunConfig::keys()) {
      sub->add_option_function<std::string>(
          "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; }, "config key " + key);
    }
    sub->add_option("--set", sets, "extra key=value override (repeatable)");
    sub->callback([&chosen, &cmd] { chosen = &cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return grsaa::exit_config_error;
  }

  grsaa::RunConfig cfg;
  try {
    if (!config_file.empty()) cfg = grsaa::RunConfig::load(config_file);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw grsaa::ConfigError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
  } catch (const grsaa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return grsaa::exit_config_error;
  }
  return chosen->run(cfg, std::cout);
}
