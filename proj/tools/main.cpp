#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gasdyn/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"1D Lagrangian gas dynamics in canonical (z, u, m) variables"};
  app.set_version_flag("--version", gasdyn::cli::kVersion);
  app.require_subcommand(1);

  gasdyn::cli::Options opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gas-eval", "evaluate derived quantities of one thermodynamic state"},
      {"hugoniot-curve", "tabulate the shock curve factors f, g, h over a Z grid"},
      {"contact-jump", "resolve a state across an entropy jump"},
      {"simulate", "run the characteristic solver on a configured scenario"},
      {"classify", "simulate and report the long-time behavior"},
      {"reflect", "iterate the two-contact reflection recurrence"},
      {"vacuum-check", "evaluate the far-field vacuum condition"},
      {"construct", "certify and build shock-free two-contact initial data"},
      {"shock-trace", "trace a single shock of varying strength"},
  };
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", opt.config_path, "run configuration file")
        ->required();
    sub->add_option("--out", opt.out_dir, "output directory (default .)");
    sub->add_option("--horizon", opt.horizon, "override the scenario time horizon");
    sub->add_option("--refine", opt.refine, "halve scenario spacing this many times");
    sub->add_option("--seed", opt.seed, "sweep seed recorded in the summary");
    sub->callback([&opt, name = name] { opt.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return gasdyn::cli::run(opt);
}
