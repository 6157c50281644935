#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "echosim/options.hpp"
#include "echosim/sim.hpp"

namespace echosim {

enum class ExperimentKind { noise, characterize, explore, corridor, calibrate };

enum class SensorSelection { us, tof, both };

// One experiment invocation: which experiment, on which scene, with which
// seeds/options, writing where. Validation is kind-aware (e.g. characterize
// insists on a single-wall scene).
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::noise;
  std::filesystem::path env_path;  // empty for noise/calibrate
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "out";
  SensorSelection sensors = SensorSelection::us;
  RunOptions options;
};

void validate(const ExperimentSpec& spec);  // throws ConfigError

// ---- noise -----------------------------------------------------------------
// Receive-only scans through each filter setting; pooled mean/std per setting.
// Writes noise_summary.csv.
struct NoiseRow {
  int k_slow = 1;
  int k_fast = 1;
  double mean_au = 0.0;
  double std_au = 0.0;
};
std::vector<NoiseRow> run_noise_experiment(const ExperimentSpec& spec);

// ---- characterize ----------------------------------------------------------
// Single wall, swept through hover distances 0.5..4.0 m in 0.5 m steps at the
// configured incidence angle; characterize_scans filtered scans per step.
// Writes characterize_profile.csv (per-bin mean/min/max) and
// characterize_detections.csv (per-scan first-crossing detections).
struct CharacterizeStep {
  double distance_m = 0.0;          // perpendicular wall distance of this step
  std::vector<double> mean;         // per sample bin
  std::vector<std::uint16_t> min;
  std::vector<std::uint16_t> max;
  std::vector<Detection> detections;  // one per scan
};
std::vector<CharacterizeStep> run_characterization(const ExperimentSpec& spec);

// ---- explore ---------------------------------------------------------------
// Closed-loop flights, one per seed per selected sensor. Per-run logs plus a
// summary table per sensor; averages are recomputed from the rows.
struct SummaryTable {
  struct Row {
    std::uint64_t seed = 0;
    double time_s = 0.0;
    bool crashed = false;
    double distance_m = 0.0;
  };
  std::vector<Row> rows;
  double average_time_s() const;
  double average_distance_m() const;
  double crash_fraction() const;
};
struct ExplorationResult {
  std::optional<SummaryTable> us;
  std::optional<SummaryTable> tof;
};
ExplorationResult run_exploration(const ExperimentSpec& spec);

// ---- corridor --------------------------------------------------------------
// Open-loop sideways sweep past an obstacle lineup with the controller off,
// logging both sensors every tick plus the filtered acoustic waterfall.
// Writes corridor_trace.csv and corridor_waterfall.csv.
struct CorridorTick {
  std::int64_t tick = 0;
  double elapsed_s = 0.0;
  double x_m = 0.0;
  std::string section;  // "solid" | "glass" | "soft" | "gap" (by boresight hit)
  Detection us;
  Detection tof;
};
std::vector<CorridorTick> run_corridor(const ExperimentSpec& spec);

// ---- calibrate -------------------------------------------------------------
// Bisect echo.a0 until a rigid perpendicular wall at 4.0 m gives a noise-free
// peak of 8000 +/- 50 AU; writes calibration.txt ("echo.a0 = ..."). Throws
// SimError if the search cannot converge.
double calibrate_amplitude(const ExperimentSpec& spec);

}  // namespace echosim
