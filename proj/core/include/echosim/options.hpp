#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "echosim/acoustics.hpp"
#include "echosim/control.hpp"
#include "echosim/dsp.hpp"
#include "echosim/sim.hpp"

namespace echosim {

// The full tunable surface of a run, addressable by dotted keys
// ("oa.threshold", "scan.decim", ...). Defaults are the flight firmware
// values. See the README for the key table.
struct RunOptions {
  ScanConfig scan;
  NoiseModel noise;
  EchoModel echo;
  FilterParams filter{3, 1};
  OAParams oa;
  LoopTiming timing;
  TofConfig tof;

  double battery_limit_s = 440.0;
  double drone_radius_m = 0.06;
  bool record_scans = false;
  std::optional<Pose> start;  // unset: center of the environment bounds, heading 0

  // characterize
  double characterize_angle_deg = 90.0;
  int characterize_scans = 100;
  // noise experiment
  int noise_scans = 10000;
  // corridor
  double corridor_speed = 0.1;          // m/s, sideways
  double corridor_length = 12.0;        // m
  Vec2 corridor_start{0.0, 0.0};
  double corridor_heading_deg = 90.0;   // facing the obstacle lineup
};

// Apply one dotted-key override. Unknown keys and unparsable values throw
// ConfigError.
void apply_override(RunOptions& options, const std::string& key, const std::string& value);

// KEY=VALUE with a dotted key, as given to --set.
void apply_override_assignment(RunOptions& options, const std::string& assignment);

// Config / calibration file: one "key = value" per line, '#' comments. The
// calibrate command writes its result in this format ("echo.a0 = ...").
void apply_overrides_file(RunOptions& options, const std::filesystem::path& path);

// Cross-field validation of everything in one go. Throws ConfigError.
void validate(const RunOptions& options);

FlightParams make_flight_params(const RunOptions& options, const Environment& env);

}  // namespace echosim
