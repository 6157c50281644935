#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "echosim/acoustics.hpp"
#include "echosim/control.hpp"
#include "echosim/dsp.hpp"
#include "echosim/environment.hpp"

namespace echosim {

struct DroneState {
  Pose pose;
  std::int64_t tick = 0;
  double elapsed = 0.0;  // seconds
  friend bool operator==(const DroneState&, const DroneState&) = default;
};

// Control-loop cadence. One tick = one scan + one control step. A scan
// finished on tick t steers the drone sensor_latency_ticks later: processing
// is not free on the real thing, and the simulator keeps that gap.
struct LoopTiming {
  double tick_period = 0.030;    // seconds, ~33 Hz
  int sensor_latency_ticks = 1;
  friend bool operator==(const LoopTiming&, const LoopTiming&) = default;
};

void validate(const LoopTiming& timing);  // throws ConfigError

// Narrow-beam optical time-of-flight rangefinder: a fan of rays across a
// small cone. Glass and dark absorptive surfaces do not return a hit — the
// beam goes through (or into) them.
struct TofConfig {
  double fov_deg = 27.0;
  double max_range = 4.0;  // meters
  int rays = 9;            // odd, so a boresight ray exists
  friend bool operator==(const TofConfig&, const TofConfig&) = default;
};

// Needs the acoustic config too: the optical cone must stay narrower than the
// acoustic one for the sensors to be meaningfully different.
void validate(const TofConfig& tof, const ScanConfig& scan);  // throws ConfigError

enum class SensorKind { us, tof };
std::string to_string(SensorKind kind);

enum class FlightOutcome { crash, battery_out };
std::string to_string(FlightOutcome outcome);

// Unicycle update: yaw first, then translate along the new heading. Heading
// stays wrapped to (-pi, pi].
DroneState kinematics_step(const DroneState& state, const ControlCommand& cmd, double dt);

// Closest optically visible surface across the ray fan, or absent when
// nothing diffuse sits within max_range. sample_index stays empty (the
// optical sensor has no range bins).
Detection tof_measure(const Pose& pose, const Environment& env, const TofConfig& tof);

// True when the hull (disc of drone_radius) touches any segment — boundary
// contact included — or the position has left the environment bounds.
bool check_crash(const Pose& pose, const Environment& env, double drone_radius);

// Everything a flight needs besides the environment and the seed.
struct FlightParams {
  Pose start;
  ScanConfig scan;
  EchoModel echo;
  NoiseModel noise;
  FilterParams filter{3, 1};
  OAParams oa;
  LoopTiming timing;
  TofConfig tof;
  double drone_radius = 0.06;  // meters
  bool record_scans = false;   // keep per-tick filtered scans in the record
};

// One per-tick log row. `detection` is the measurement completed on this
// tick; the command applied on this tick used the measurement from
// sensor_latency_ticks earlier. `pose` is the state after the tick's motion.
struct FlightRow {
  std::int64_t tick = 0;
  double elapsed = 0.0;
  Pose pose;
  Detection detection;
  ControlCommand command;
  SensorKind sensor = SensorKind::us;
  std::optional<MagnitudeScan> scan;
  friend bool operator==(const FlightRow&, const FlightRow&) = default;
};

struct FlightRecord {
  std::vector<FlightRow> rows;
  FlightOutcome outcome = FlightOutcome::battery_out;
  double total_distance = 0.0;  // meters, sum of per-tick displacements
  double total_time = 0.0;      // seconds
};

// Named child streams of a run seed; exposed so tests can replay the exact
// sensor/steering randomness of a recorded flight.
std::uint64_t sensor_stream_seed(std::uint64_t seed);
std::uint64_t control_stream_seed(std::uint64_t seed);

// Closed-loop flight: measure, steer (with sensor latency), move, check for
// contact, until a crash or until battery_limit_s of simulated time runs
// out. Deterministic for a given (environment, params, seed). Throws
// SimError when the start pose is outside bounds or already in contact.
FlightRecord run_flight(const Environment& env, SensorKind sensor, const FlightParams& params,
                        std::uint64_t seed, double battery_limit_s);

}  // namespace echosim
