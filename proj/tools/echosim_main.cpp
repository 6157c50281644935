// echosim command-line front end: one subcommand per experiment family.
// Exit codes: 0 success, 2 configuration error, 3 simulation failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "echosim/csv.hpp"
#include "echosim/errors.hpp"
#include "echosim/experiments.hpp"

namespace {

using namespace echosim;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const std::int64_t value = parse_int(token);
    if (value < 0) throw ConfigError("seed must be non-negative: " + token);
    seeds.push_back(static_cast<std::uint64_t>(value));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

SensorSelection parse_sensor(const std::string& text) {
  if (text == "us") return SensorSelection::us;
  if (text == "tof") return SensorSelection::tof;
  if (text == "both") return SensorSelection::both;
  throw ConfigError("unknown sensor selection (want us|tof|both): " + text);
}

struct CliArgs {
  std::string env;
  std::string seeds = "1";
  std::string out = "out";
  std::string sensor = "us";
  std::vector<std::string> sets;
  std::vector<std::string> configs;
};

void add_common_flags(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("--env", args.env, "environment file (plain-text scene)");
  cmd->add_option("--seeds", args.seeds, "comma-separated seed list (default 1)");
  cmd->add_option("--out", args.out, "output directory (default ./out)");
  cmd->add_option("--set", args.sets, "override, dotted key (e.g. --set oa.threshold=6500)")
      ->take_all();
  cmd->add_option("--sensor", args.sensor, "sensor selection: us|tof|both (default us)");
  cmd->add_option("--config", args.configs,
                  "overrides file, one 'key = value' per line (calibration files load here "
                  "too); applied before --set")
      ->take_all();
}

ExperimentSpec build_spec(ExperimentKind kind, const CliArgs& args) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.env_path = args.env;
  spec.seeds = parse_seed_list(args.seeds);
  spec.output_dir = args.out;
  spec.sensors = parse_sensor(args.sensor);
  for (const std::string& path : args.configs) apply_overrides_file(spec.options, path);
  for (const std::string& assignment : args.sets) {
    apply_override_assignment(spec.options, assignment);
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "echosim: deterministic 2D nano-drone flight simulator comparing a wide-cone "
      "ultrasonic sensing pipeline against a narrow-beam optical rangefinder"};
  app.require_subcommand(1);

  CliArgs args;
  CLI::App* cmd_noise =
      app.add_subcommand("noise", "receive-only noise floor statistics per filter setting");
  CLI::App* cmd_characterize = app.add_subcommand(
      "characterize", "distance sweep against a single wall: per-bin profiles and detections");
  CLI::App* cmd_explore =
      app.add_subcommand("explore", "seeded closed-loop exploration flights with crash summary");
  CLI::App* cmd_corridor = app.add_subcommand(
      "corridor", "open-loop sideways sweep past a material lineup, both sensors logged");
  CLI::App* cmd_calibrate = app.add_subcommand(
      "calibrate", "solve for the echo amplitude constant and write a calibration file");
  for (CLI::App* cmd : {cmd_noise, cmd_characterize, cmd_explore, cmd_corridor, cmd_calibrate}) {
    add_common_flags(cmd, args);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_noise)) {
      run_noise_experiment(build_spec(echosim::ExperimentKind::noise, args));
    } else if (app.got_subcommand(cmd_characterize)) {
      run_characterization(build_spec(echosim::ExperimentKind::characterize, args));
    } else if (app.got_subcommand(cmd_explore)) {
      run_exploration(build_spec(echosim::ExperimentKind::explore, args));
    } else if (app.got_subcommand(cmd_corridor)) {
      run_corridor(build_spec(echosim::ExperimentKind::corridor, args));
    } else {
      calibrate_amplitude(build_spec(echosim::ExperimentKind::calibrate, args));
    }
    std::cout << "outputs in " << args.out << "\n";
    return 0;
  } catch (const echosim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const echosim::SimError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
