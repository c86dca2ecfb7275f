#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "spark/pipeline.hpp"

namespace {

struct StageArgs {
  std::string config_path;
  std::string seed;
  std::string out_dir;
};

void add_common(CLI::App* cmd, StageArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value configuration file")->required();
  cmd->add_option("--seed", args.seed, "random seed override");
  cmd->add_option("--out", args.out_dir, "output directory override");
}

spark::pipeline::RunConfig build_config(const StageArgs& args) {
  std::map<std::string, std::string> overrides;
  if (!args.seed.empty()) overrides["seed"] = args.seed;
  if (!args.out_dir.empty()) overrides["out_dir"] = args.out_dir;
  return spark::pipeline::RunConfig::load(args.config_path, overrides);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"moral spark analysis pipeline"};
  app.require_subcommand(1);

  std::map<std::string, StageArgs> stage_args;
  for (const auto& name : spark::pipeline::kStageOrder) {
    auto* cmd = app.add_subcommand(name, "run the " + name + " stage");
    add_common(cmd, stage_args[name]);
  }
  StageArgs all_args;
  auto* all_cmd = app.add_subcommand("run-all", "run every stage in order");
  add_common(all_cmd, all_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (all_cmd->parsed()) {
      spark::pipeline::run_all(build_config(all_args));
    } else {
      for (const auto& name : spark::pipeline::kStageOrder) {
        if (app.get_subcommand(name)->parsed()) {
          spark::pipeline::run_stage(name, build_config(stage_args[name]));
          break;
        }
      }
    }
  } catch (const spark::pipeline::PipelineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
