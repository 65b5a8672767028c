// Command-line front end: single key-rate points, distance sweeps and panel
// presets, written as CSV.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "glt/errors.hpp"
#include "glt/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Secure key rates for four-state reference-frame-independent QKD with flawed sources"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string mode_name;
  std::string preset_id;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file");
    cmd->add_option("--out", out_path, "CSV output path (default: stdout)");
    cmd->add_option("--mode", mode_name, "override the statistics mode")
        ->check(CLI::IsMember({"asymptotic", "finite"}));
  };
  auto* keyrate = app.add_subcommand("keyrate", "key rate at keyrate.distance_km");
  auto* sweep = app.add_subcommand("sweep", "key rate over the sweep.* distance grid");
  auto* preset = app.add_subcommand("preset", "reproduce a figure panel");
  preset->add_option("id", preset_id, "panel id")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c", "d", "e", "f"}));
  for (auto* cmd : {keyrate, sweep, preset}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? glt::kExitOk : glt::kExitConfigError;
  }

  glt::RunConfig cfg;
  try {
    if (preset->parsed()) {
      // A config file given alongside a preset overrides the preset's keys.
      std::string text = "preset = " + preset_id + "\n";
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw glt::ConfigError("cannot read config file '" + config_path + "'");
        text += std::string(std::istreambuf_iterator<char>(in), {});
      }
      cfg = glt::parse_config_text(text);
    } else if (!config_path.empty()) {
      cfg = glt::parse_config(config_path);
    } else {
      cfg = glt::parse_config_text("");
    }
  } catch (const glt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return glt::kExitConfigError;
  }

  std::optional<glt::Mode> mode;
  if (mode_name == "asymptotic") mode = glt::Mode::asymptotic;
  if (mode_name == "finite") mode = glt::Mode::finite;

  std::vector<glt::ReportRow> rows;
  try {
    rows = glt::execute(cfg, keyrate->parsed() ? glt::Command::keyrate : glt::Command::sweep, mode);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return glt::kExitConfigError;
  } catch (const glt::DegenerateSystem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return glt::kExitInfeasible;
  }

  if (out_path.empty()) {
    glt::write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return glt::kExitConfigError;
    }
    glt::write_csv(out, rows);
  }
  const int code = glt::exit_code(rows);
  if (code == glt::kExitInfeasible) std::cerr << "warning: infeasible statistics at some points\n";
  return code;
}
