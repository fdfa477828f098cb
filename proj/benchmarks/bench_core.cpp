#include <pvcsd/clearsky.hpp>
#include <pvcsd/csdetect.hpp>
#include <pvcsd/datagen.hpp>
#include <pvcsd/estimator.hpp>
#include <pvcsd/pvusa.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace pvcsd;

namespace {

const Scenario& scenario()
{
    static const Scenario s = [] {
        ScenarioConfig cfg;
        cfg.day_count = 60;
        return generate(cfg, 5);
    }();
    return s;
}

EstimationConfig estimation()
{
    ScenarioConfig sc;
    EstimationConfig cfg;
    cfg.nominal_power = sc.nominal_power;
    cfg.utc_offset = sc.site.utc_offset();
    return cfg;
}

std::vector<Sample> clear_noon_window()
{
    ScenarioConfig sc;
    sc.day_count = 1;
    sc.noise_fraction = 0.0;
    sc.schedule = {DayPlan{}};
    const Scenario s = generate(sc, 1);
    return {s.samples.begin() + 8, s.samples.begin() + 16};
}

} // namespace

static void bm_delta_power_bounds(benchmark::State& state)
{
    const EtaBox box;
    double i = 100.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_power_bounds(i, 85.0, 31.0, 1.5, box));
        i = i < 900.0 ? i + 1.0 : 100.0;
    }
}
BENCHMARK(bm_delta_power_bounds);

static void bm_solar_clearsky(benchmark::State& state)
{
    const SiteConfig site = ScenarioConfig{}.site;
    Timestamp t = parse_timestamp("2012-06-01T00:00:00Z");
    for (auto _ : state) {
        benchmark::DoNotOptimize(clearsky_irradiance(site, t));
        t += std::chrono::minutes(7);
    }
}
BENCHMARK(bm_solar_clearsky);

static void bm_detect_window(benchmark::State& state)
{
    const auto samples = clear_noon_window();
    const Window w(samples);
    const EtaBox box;
    const PvusaParams mu{1.0, -1.2e-4, -3.5e-3};
    for (auto _ : state)
        benchmark::DoNotOptimize(detect_clear_sky(w, box, mu, 0.1));
}
BENCHMARK(bm_detect_window);

static void bm_rls_update(benchmark::State& state)
{
    const auto samples = clear_noon_window();
    const Window w(samples);
    const EstimatorState s0 = initial_state(estimation());
    for (auto _ : state)
        benchmark::DoNotOptimize(rls_update(s0, w));
}
BENCHMARK(bm_rls_update);

static void bm_run_60_days(benchmark::State& state)
{
    const auto& s = scenario();
    const EstimationConfig cfg = estimation();
    for (auto _ : state)
        benchmark::DoNotOptimize(run(s.samples, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.samples.size()));
}
BENCHMARK(bm_run_60_days)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
