// moving-well <modes|evolve|verify> --config <path> [--method analytic|fdm|both] [--out <dir>]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "moving_well/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical propagation in an infinite well with moving walls"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string method;
  std::string out_dir;

  const std::pair<const char*, const char*> commands[] = {
      {"modes", "tabulate mode energies and write mode densities"},
      {"evolve", "propagate the configured initial state"},
      {"verify", "run the residual, boundary, norm and sign audits"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    sub->add_option("--method", method, "propagator for evolve (default analytic)")
        ->check(CLI::IsMember({"analytic", "fdm", "both"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : moving_well::cli::kInvalidConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return moving_well::cli::run(command, config_path, method.empty() ? std::nullopt : std::optional(method),
                               out_dir.empty() ? std::nullopt : std::optional(out_dir), std::cout, std::cerr);
}
