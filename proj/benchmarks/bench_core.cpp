#include <benchmark/benchmark.h>

#include "echosim/acoustics.hpp"
#include "echosim/dsp.hpp"
#include "echosim/environment.hpp"
#include "echosim/sim.hpp"

namespace {

using namespace echosim;

const Environment& office() {
  static const Environment env = load_environment(ECHOSIM_DATA_DIR "/office.env");
  return env;
}

void BM_synthesize_scan(benchmark::State& state) {
  const ScanConfig cfg;
  const EchoModel echo;
  const NoiseModel noise;
  const Pose pose{{3.0, 2.4}, 0.0};
  Rng rng(42);
  std::int64_t tick = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize_scan(pose, office(), cfg, echo, noise, rng, tick++));
  }
}
BENCHMARK(BM_synthesize_scan);

void BM_pipeline_process(benchmark::State& state) {
  const ScanConfig cfg;
  Rng rng(42);
  const MagnitudeScan raw = synthesize_scan({{3.0, 2.4}, 0.0}, office(), cfg, {}, {}, rng);
  Pipeline pipeline(cfg, {3, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline.process(raw));
  }
}
BENCHMARK(BM_pipeline_process);

void BM_detect_closest(benchmark::State& state) {
  const ScanConfig cfg;
  Rng rng(42);
  const MagnitudeScan raw = synthesize_scan({{3.0, 2.4}, 0.0}, office(), cfg, {}, {}, rng);
  Pipeline pipeline(cfg, {3, 1});
  const MagnitudeScan filtered = pipeline.process(raw);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_closest(filtered, 6000.0, cfg));
  }
}
BENCHMARK(BM_detect_closest);

void BM_flight_second(benchmark::State& state) {
  FlightParams params;
  params.start = {{3.0, 2.4}, 0.0};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_flight(office(), SensorKind::us, params, seed++, 1.0));
  }
}
BENCHMARK(BM_flight_second);

}  // namespace

BENCHMARK_MAIN();
