// resonance: Selberg zeta zeros of Schottky surfaces from a flat config file.
//
//   resonance <command> [config] [--set key=value]...
//
// Commands: validate, zeta-grid, resonances, lengths, compare.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resonance/commands.hpp"
#include "resonance/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Resonances of Schottky surfaces via transfer-operator determinants"};
  app.set_version_flag("--version", resonance::kToolVersion);

  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("command", command, "validate | zeta-grid | resonances | lengths | compare")
      ->required()
      ->check(CLI::IsMember(resonance::command_names()));
  app.add_option("config", config_path, "key = value config file (defaults apply if omitted)");
  app.add_option("--set", overrides, "override one key: --set disc.N=32")
      ->allow_extra_args(false)
      ->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : resonance::kExitInvalidConfig;
  }

  resonance::apply_thread_limit();
  resonance::ConfigEntries entries;
  try {
    if (!config_path.empty()) entries = resonance::parse_config_file(config_path);
    for (const auto& assignment : overrides) resonance::apply_override(entries, assignment);
  } catch (const resonance::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return resonance::kExitInvalidConfig;
  }
  return resonance::run(command, entries, std::cout, std::cerr);
}
