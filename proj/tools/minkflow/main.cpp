#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "minkflow/cli/commands.hpp"
#include "minkflow/cli/config.hpp"
#include "minkflow/version.hpp"

namespace cli = minkflow::cli;

namespace {

struct Subcommand {
  cli::Command command;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::unique_ptr<std::string>> values;
  std::map<std::string, CLI::Option*> options;
};

std::string help_for(std::string_view key) {
  for (const auto& info : cli::known_keys())
    if (info.name == key) return std::string(info.help);
  return {};
}

std::string flag_names(std::string_view key) {
  std::string names = "--" + std::string(key);
  std::string dashed(key);
  for (char& ch : dashed)
    if (ch == '_') ch = '-';
  if (dashed != key) names += ",--" + dashed;
  return names;
}

int report(const std::exception& e) {
  std::cerr << "minkflow: " << e.what() << '\n';
  return cli::exit_code_for(e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spacelike curve flows in Minkowski 3-space"};
  app.set_version_flag("--version", std::string(minkflow::kVersion));
  app.require_subcommand(1);

  const std::pair<cli::Command, const char*> commands[] = {
      {cli::Command::Evolve, "evolve curvature and torsion under a velocity preset"},
      {cli::Command::Soliton, "evaluate a kink or bell soliton and its residuals"},
      {cli::Command::Surface, "fundamental forms and curvatures of a normal or binormal surface"},
      {cli::Command::Reconstruct, "reconstruct the curve for each recorded time level"},
      {cli::Command::FrameCheck, "measure frame orthonormality drift and its refinement ratio"},
  };
  std::vector<std::unique_ptr<Subcommand>> subs;
  for (const auto& [command, description] : commands) {
    auto sub = std::make_unique<Subcommand>();
    sub->command = command;
    sub->app = app.add_subcommand(std::string(cli::to_string(command)), description);
    sub->app->add_option("--config", sub->config_path,
                         "key=value file or run_meta.json from an earlier run");
    for (auto key : cli::keys_for(command)) {
      auto& slot = sub->values[std::string(key)];
      slot = std::make_unique<std::string>();
      sub->options[std::string(key)] = sub->app->add_option(flag_names(key), *slot, help_for(key));
    }
    subs.push_back(std::move(sub));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    try {
      cli::KeyValues file;
      if (!sub->config_path.empty()) file = cli::load_config_file(sub->config_path);
      cli::KeyValues flags;
      for (const auto& [key, opt] : sub->options)
        if (opt->count() > 0) flags[key] = *sub->values[key];
      cli::run(cli::resolve_config(sub->command, file, flags));
      return cli::kExitOk;
    } catch (const std::exception& e) {
      return report(e);
    }
  }
  return cli::kExitConfig;
}
