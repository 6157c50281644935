#include "echosim/sim.hpp"

#include <cmath>
#include <deque>

#include "echosim/errors.hpp"

namespace echosim {

void validate(const LoopTiming& timing) {
  if (!(timing.tick_period > 0.0)) throw ConfigError("sim: tick_period must be > 0");
  if (timing.sensor_latency_ticks < 0) {
    throw ConfigError("sim: sensor_latency_ticks must be >= 0");
  }
}

void validate(const TofConfig& tof, const ScanConfig& scan) {
  if (!(tof.fov_deg > 0.0)) throw ConfigError("tof: fov_deg must be > 0");
  if (tof.fov_deg >= scan.fov_deg) {
    throw ConfigError("tof: fov_deg must be narrower than the acoustic fov");
  }
  if (!(tof.max_range > 0.0)) throw ConfigError("tof: max_range must be > 0");
  if (tof.rays < 1 || tof.rays % 2 == 0) throw ConfigError("tof: rays must be odd and >= 1");
}

std::string to_string(SensorKind kind) { return kind == SensorKind::us ? "us" : "tof"; }

std::string to_string(FlightOutcome outcome) {
  return outcome == FlightOutcome::crash ? "crash" : "battery_out";
}

DroneState kinematics_step(const DroneState& state, const ControlCommand& cmd, double dt) {
  DroneState next = state;
  next.pose.heading = wrap_angle(state.pose.heading + deg_to_rad(cmd.yaw_rate) * dt);
  next.pose.position =
      state.pose.position + cmd.forward_velocity * dt * unit_from_angle(next.pose.heading);
  next.tick = state.tick + 1;
  next.elapsed = state.elapsed + dt;
  return next;
}

Detection tof_measure(const Pose& pose, const Environment& env, const TofConfig& tof) {
  const double half = deg_to_rad(tof.fov_deg) / 2.0;
  double best = tof.max_range;
  bool hit_any = false;
  for (int r = 0; r < tof.rays; ++r) {
    const double offset =
        tof.rays == 1 ? 0.0 : -half + 2.0 * half * static_cast<double>(r) / (tof.rays - 1);
    const Vec2 dir = unit_from_angle(pose.heading + offset);
    for (const Segment& seg : env.segments) {
      if (seg.material.optical_kind != OpticalKind::diffuse) continue;  // no optical return
      const auto t = ray_segment_intersection(pose.position, dir, seg.a, seg.b);
      if (t && *t <= best) {
        best = *t;
        hit_any = true;
      }
    }
  }
  Detection det;
  if (hit_any) det.distance = best;
  return det;
}

bool check_crash(const Pose& pose, const Environment& env, double drone_radius) {
  if (!env.bounds.contains(pose.position)) return true;
  for (const Segment& seg : env.segments) {
    if (point_segment_distance(pose.position, seg.a, seg.b) <= drone_radius) return true;
  }
  return false;
}

std::uint64_t sensor_stream_seed(std::uint64_t seed) { return derive_stream_seed(seed, 0x5e); }
std::uint64_t control_stream_seed(std::uint64_t seed) { return derive_stream_seed(seed, 0xc7); }

FlightRecord run_flight(const Environment& env, SensorKind sensor, const FlightParams& params,
                        std::uint64_t seed, double battery_limit_s) {
  if (!env.bounds.contains(params.start.position) ||
      check_crash(params.start, env, params.drone_radius)) {
    throw SimError("run_flight: start pose is outside bounds or in contact with an obstacle");
  }
  if (!(battery_limit_s > 0.0)) throw SimError("run_flight: battery limit must be > 0");

  Rng sensor_rng(sensor_stream_seed(seed));
  Rng control_rng(control_stream_seed(seed));
  Pipeline pipeline(params.scan, params.filter);
  ControllerState controller;
  controller.yaw_sign = control_rng.coin_sign();

  const double dt = params.timing.tick_period;
  const std::size_t latency = static_cast<std::size_t>(params.timing.sensor_latency_ticks);
  std::deque<Detection> measured;  // newest at the back

  FlightRecord record;
  DroneState state{params.start, 0, 0.0};

  while (state.elapsed + dt <= battery_limit_s + 1e-9) {
    const std::int64_t tick = state.tick + 1;

    Detection detection;
    std::optional<MagnitudeScan> kept_scan;
    if (sensor == SensorKind::us) {
      const MagnitudeScan raw = synthesize_scan(state.pose, env, params.scan, params.echo,
                                                params.noise, sensor_rng, tick);
      const MagnitudeScan filtered = pipeline.process(raw);
      detection = detect_closest(filtered, params.oa.threshold, params.scan);
      if (params.record_scans) kept_scan = filtered;
    } else {
      detection = tof_measure(state.pose, env, params.tof);
    }

    measured.push_back(detection);
    // The measurement steering this tick is `latency` ticks old; before any
    // such measurement exists the drone flies as if the way were clear.
    Detection used;
    if (measured.size() > latency) used = measured[measured.size() - 1 - latency];
    while (measured.size() > latency + 1) measured.pop_front();

    const ControlCommand cmd = controller_step(controller, used, params.oa, dt, control_rng);
    state = kinematics_step(state, cmd, dt);
    record.total_distance += cmd.forward_velocity * dt;

    FlightRow row{tick, state.elapsed, state.pose, detection, cmd, sensor, std::move(kept_scan)};
    record.rows.push_back(std::move(row));

    if (check_crash(state.pose, env, params.drone_radius)) {
      record.outcome = FlightOutcome::crash;
      record.total_time = state.elapsed;
      return record;
    }
  }
  record.outcome = FlightOutcome::battery_out;
  record.total_time = state.elapsed;
  return record;
}

}  // namespace echosim
