// Config-driven runner for the Muskat interface solver.
//
//   muskat_run run.json [--check] [--seed N] [--quiet]

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "muskat/config.hpp"
#include "muskat/runner.hpp"
#include "muskat/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Muskat interface evolution runner"};
  std::string config_path;
  bool check_only = false;
  muskat::RunFlags flags;
  app.add_option("config", config_path, "JSON run document")->required();
  app.add_flag("--check", check_only, "parse and validate the config, then exit");
  app.add_option("--seed", flags.seed, "seed for the noise added to the initial data");
  app.add_flag("--quiet", flags.quiet, "only log warnings and errors");
  app.set_version_flag("--version", std::string(muskat::kVersion));
  CLI11_PARSE(app, argc, argv);

  spdlog::set_level(flags.quiet ? spdlog::level::warn : spdlog::level::info);

  muskat::RunConfig cfg;
  try {
    cfg = muskat::load_config(config_path);
  } catch (const muskat::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return muskat::kExitConfigError;
  }
  if (check_only) {
    if (!flags.quiet) std::cout << config_path << ": ok\n";
    return muskat::kExitOk;
  }

  try {
    return muskat::execute(cfg, flags);
  } catch (const muskat::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return muskat::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return muskat::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return muskat::kExitNumericalFailure;
  }
}
