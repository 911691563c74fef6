#include <array>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "noma/runner.hpp"
#include "noma/scenario.hpp"
#include "noma/version.hpp"

namespace {

struct ModeArgs {
  CLI::App* sub = nullptr;
  std::string scenario_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  int gcq_nodes = 0;
};

void attach_mode(CLI::App& app, const char* name, const char* help, ModeArgs& args) {
  args.sub = app.add_subcommand(name, help);
  args.sub->add_option("scenario", args.scenario_path, "scenario JSON file")->required();
  args.sub->add_option("--out", args.out_path, "write CSV to this file instead of stdout");
  args.sub->add_option("--seed", args.seed, "override system.seed");
  args.sub->add_option("--trials", args.trials, "override run.trials");
  args.sub->add_option("--gcq-nodes", args.gcq_nodes, "override run.gcq_nodes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA downlink rate and energy-efficiency simulator"};
  app.set_version_flag("--version", std::string("noma-ee ") + noma::kVersion);
  app.require_subcommand(1);

  std::array<ModeArgs, 4> modes;
  attach_mode(app, "simulate", "instantaneous rates over independent channel realizations",
              modes[0]);
  attach_mode(app, "ergodic", "ergodic sum rate: quadrature against Monte-Carlo", modes[1]);
  attach_mode(app, "optimize", "energy-efficiency maximisation with iteration trace", modes[2]);
  attach_mode(app, "sweep", "ergodic or optimize summary per sweep value", modes[3]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? noma::kExitSuccess : noma::kExitConfig;
  }

  for (const ModeArgs& mode : modes) {
    if (!mode.sub->parsed()) continue;
    noma::CliOverrides overrides;
    if (mode.sub->count("--seed") > 0) overrides.seed = mode.seed;
    if (mode.sub->count("--trials") > 0) overrides.trials = mode.trials;
    if (mode.sub->count("--gcq-nodes") > 0) overrides.gcq_nodes = mode.gcq_nodes;
    return noma::execute(mode.sub->get_name(), mode.scenario_path, overrides, mode.out_path,
                         std::cerr);
  }
  return noma::kExitConfig;
}
