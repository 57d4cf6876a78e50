// szegolab: run finite-section experiments from JSON configs.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "szegolab/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite sections of Toeplitz and almost periodic band operators"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_path, "Path to the JSON config")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", validate_path, "Path to the JSON config")->required();

  auto* list = app.add_subcommand("list-experiments", "List the available experiment kinds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : szegolab::kExitConfig;
  }

  if (*run) return szegolab::run_config_file(run_path, std::cerr);
  if (*validate) return szegolab::validate_config_file(validate_path, std::cout);
  if (*list) {
    for (const auto& [name, description] : szegolab::list_experiments()) std::cout << name << "\t" << description << '\n';
    return 0;
  }
  return szegolab::kExitConfig;
}
