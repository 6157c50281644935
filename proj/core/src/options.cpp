#include "echosim/options.hpp"

#include <fstream>
#include <sstream>

#include "echosim/csv.hpp"
#include "echosim/errors.hpp"

namespace echosim {

namespace {

int parse_int_checked(const std::string& key, const std::string& value) {
  const std::int64_t v = parse_int(value);
  if (v < -(1ll << 31) || v > (1ll << 31)) throw ConfigError(key + ": value out of range");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw ConfigError(key + ": expected 0/1/true/false, got '" + value + "'");
}

}  // namespace

void apply_override(RunOptions& o, const std::string& key, const std::string& value) {
  try {
    // scan
    if (key == "scan.f_op") o.scan.f_op = parse_double(value);
    else if (key == "scan.decim") o.scan.decim = parse_int_checked(key, value);
    else if (key == "scan.num_samples") o.scan.num_samples = parse_int_checked(key, value);
    else if (key == "scan.tx_cycles") o.scan.tx_cycles = parse_int_checked(key, value);
    else if (key == "scan.ringdown_samples") o.scan.ringdown_samples = parse_int_checked(key, value);
    else if (key == "scan.fov_deg") o.scan.fov_deg = parse_double(value);
    else if (key == "scan.speed_of_sound") o.scan.speed_of_sound = parse_double(value);
    // noise
    else if (key == "noise.floor_mean") o.noise.floor_mean = parse_double(value);
    else if (key == "noise.floor_std") o.noise.floor_std_unfiltered = parse_double(value);
    else if (key == "noise.outlier_prob") o.noise.outlier_prob = parse_double(value);
    else if (key == "noise.outlier_scale") o.noise.outlier_scale = parse_double(value);
    // echo
    else if (key == "echo.a0") o.echo.a0 = parse_double(value);
    else if (key == "echo.alpha") o.echo.alpha = parse_double(value);
    else if (key == "echo.pulse_sigma") o.echo.pulse_sigma_m = parse_double(value);
    else if (key == "echo.angle_floor") o.echo.angle_cos_floor = parse_double(value);
    else if (key == "echo.ringdown_peak") o.echo.ringdown_peak = parse_double(value);
    else if (key == "echo.ringdown_decay") o.echo.ringdown_decay = parse_double(value);
    // filter
    else if (key == "filter.k_slow") o.filter.k_slow = parse_int_checked(key, value);
    else if (key == "filter.k_fast") o.filter.k_fast = parse_int_checked(key, value);
    // oa
    else if (key == "oa.threshold") o.oa.threshold = parse_double(value);
    else if (key == "oa.stop_dist") o.oa.stop_dist = parse_double(value);
    else if (key == "oa.yaw_zero_dist") o.oa.yaw_zero_dist = parse_double(value);
    else if (key == "oa.max_yaw_rate") o.oa.max_yaw_rate = parse_double(value);
    else if (key == "oa.vel_divisor") o.oa.vel_divisor = parse_double(value);
    else if (key == "oa.max_velocity") o.oa.max_velocity = parse_double(value);
    else if (key == "oa.accel_limit") o.oa.accel_limit = parse_double(value);
    else if (key == "oa.reroll_period") o.oa.reroll_period = parse_double(value);
    // sim
    else if (key == "sim.tick_period") o.timing.tick_period = parse_double(value);
    else if (key == "sim.latency_ticks") o.timing.sensor_latency_ticks = parse_int_checked(key, value);
    else if (key == "sim.battery_limit") o.battery_limit_s = parse_double(value);
    else if (key == "sim.drone_radius") o.drone_radius_m = parse_double(value);
    else if (key == "sim.record_scans") o.record_scans = parse_bool(key, value);
    else if (key == "sim.start_x") {
      if (!o.start) o.start = Pose{};
      o.start->position.x = parse_double(value);
    } else if (key == "sim.start_y") {
      if (!o.start) o.start = Pose{};
      o.start->position.y = parse_double(value);
    } else if (key == "sim.start_heading_deg") {
      if (!o.start) o.start = Pose{};
      o.start->heading = deg_to_rad(parse_double(value));
    }
    // tof
    else if (key == "tof.fov_deg") o.tof.fov_deg = parse_double(value);
    else if (key == "tof.max_range") o.tof.max_range = parse_double(value);
    else if (key == "tof.rays") o.tof.rays = parse_int_checked(key, value);
    // experiment-specific
    else if (key == "characterize.angle_deg") o.characterize_angle_deg = parse_double(value);
    else if (key == "characterize.scans") o.characterize_scans = parse_int_checked(key, value);
    else if (key == "noise_exp.scans") o.noise_scans = parse_int_checked(key, value);
    else if (key == "corridor.speed") o.corridor_speed = parse_double(value);
    else if (key == "corridor.length") o.corridor_length = parse_double(value);
    else if (key == "corridor.start_x") o.corridor_start.x = parse_double(value);
    else if (key == "corridor.start_y") o.corridor_start.y = parse_double(value);
    else if (key == "corridor.heading_deg") o.corridor_heading_deg = parse_double(value);
    else throw ConfigError("unknown option key '" + key + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

void apply_override_assignment(RunOptions& options, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set expects KEY=VALUE, got '" + assignment + "'");
  }
  std::string key = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);
  const auto strip = [](std::string& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  };
  strip(key);
  strip(value);
  if (key.empty() || value.empty()) {
    throw ConfigError("--set expects KEY=VALUE, got '" + assignment + "'");
  }
  apply_override(options, key, value);
}

void apply_overrides_file(RunOptions& options, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // skip blank lines
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      apply_override_assignment(options, line);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void validate(const RunOptions& o) {
  validate(o.scan);
  validate(o.noise);
  validate(o.echo);
  validate(o.filter);
  validate(o.oa);
  validate(o.timing);
  validate(o.tof, o.scan);
  if (!(o.battery_limit_s > 0.0)) throw ConfigError("sim: battery_limit must be > 0");
  if (!(o.drone_radius_m > 0.0)) throw ConfigError("sim: drone_radius must be > 0");
  if (o.characterize_scans < 1) throw ConfigError("characterize: scans must be >= 1");
  if (o.noise_scans < 1) throw ConfigError("noise_exp: scans must be >= 1");
  if (!(o.corridor_speed > 0.0)) throw ConfigError("corridor: speed must be > 0");
  if (!(o.corridor_length > 0.0)) throw ConfigError("corridor: length must be > 0");
}

FlightParams make_flight_params(const RunOptions& o, const Environment& env) {
  FlightParams params;
  params.start = o.start.value_or(Pose{{(env.bounds.min.x + env.bounds.max.x) / 2.0,
                                        (env.bounds.min.y + env.bounds.max.y) / 2.0},
                                       0.0});
  params.scan = o.scan;
  params.echo = o.echo;
  params.noise = o.noise;
  params.filter = o.filter;
  params.oa = o.oa;
  params.timing = o.timing;
  params.tof = o.tof;
  params.drone_radius = o.drone_radius_m;
  params.record_scans = o.record_scans;
  return params;
}

}  // namespace echosim
