#include <doctest.h>

#include "oracles.hpp"

#include <pvcsd/datagen.hpp>
#include <pvcsd/error.hpp>
#include <pvcsd/estimator.hpp>

#include <random>

using namespace pvcsd;
using namespace std::chrono;

namespace {

EstimationConfig base_config()
{
    EstimationConfig cfg;
    cfg.nominal_power = oracle::kNominalPower;
    cfg.utc_offset = hours{1};
    return cfg;
}

std::vector<Observation> random_observations(std::size_t n, std::uint64_t seed, double noise = 5.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> irr(50.0, 1000.0);
    std::uniform_real_distribution<double> temp(0.0, 45.0);
    std::normal_distribution<double> err(0.0, noise);
    const PvusaParams mu = oracle::test_params();
    std::vector<Observation> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double I = irr(rng);
        const double T = temp(rng);
        out.push_back({regressor(I, T), power(mu, I, T) + err(rng)});
    }
    return out;
}

} // namespace

TEST_CASE("initial parameters")
{
    const PvusaParams p = initial_params(960.0, EtaBox{});
    CHECK(p.mu1 == doctest::Approx(0.72));
    CHECK(p.eta2() == doctest::Approx(-1.345e-4));
    CHECK(p.eta3() == doctest::Approx(-3.25e-3));
    CHECK(p.mu2 == doctest::Approx(-9.684e-5));
    CHECK_THROWS_AS(initial_params(0.0, EtaBox{}), InputError);

    const EstimatorState s = initial_state(base_config());
    CHECK(s.covariance(0, 0) == 1e3);
    CHECK(s.covariance(0, 1) == 0.0);
    CHECK(s.forgetting == 0.995);
}

TEST_CASE("config validation")
{
    EstimationConfig cfg = base_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.min_window = 1;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = base_config();
    cfg.forgetting = 1.2;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = base_config();
    cfg.beta0 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = base_config();
    cfg.nominal_power = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = base_config();
    cfg.fixed_epsilon = 0.3;
    CHECK(cfg.epsilon(1.0) == 0.3);
}

TEST_CASE("RLS without forgetting equals the regularized normal equations")
{
    EstimationConfig cfg = base_config();
    cfg.forgetting = 1.0;
    const EstimatorState s0 = initial_state(cfg);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const auto obs = random_observations(50 + 40 * seed, seed);
        const UpdateResult r = rls_update(s0, obs);
        REQUIRE(r.status == UpdateStatus::applied);
        const PvusaParams ref = oracle::regularized_least_squares(obs, s0.mu_hat, cfg.initial_covariance);
        CHECK(oracle::relative_error(r.state.mu_hat.mu1, ref.mu1) < 1e-9);
        CHECK(oracle::relative_error(r.state.mu_hat.mu2, ref.mu2) < 1e-9);
        CHECK(oracle::relative_error(r.state.mu_hat.mu3, ref.mu3) < 1e-9);
        CHECK(r.state.updates == 1);
    }
}

TEST_CASE("RLS with a diffuse prior approaches ordinary least squares")
{
    EstimationConfig cfg = base_config();
    cfg.forgetting = 1.0;
    cfg.initial_covariance = 1e8;
    const auto obs = random_observations(200, 9);
    const UpdateResult r = rls_update(initial_state(cfg), obs);
    const PvusaParams ols = oracle::ordinary_least_squares(obs);
    CHECK(oracle::relative_error(r.state.mu_hat.mu1, ols.mu1) < 1e-6);
    CHECK(oracle::relative_error(r.state.mu_hat.mu2, ols.mu2) < 1e-6);
    CHECK(oracle::relative_error(r.state.mu_hat.mu3, ols.mu3) < 1e-6);
}

TEST_CASE("RLS is sequential: one batch equals two consecutive batches")
{
    const EstimatorState s0 = initial_state(base_config());
    const auto obs = random_observations(120, 5);
    const UpdateResult all = rls_update(s0, obs);
    const std::span<const Observation> span(obs);
    const UpdateResult a = rls_update(s0, span.first(70));
    const UpdateResult b = rls_update(a.state, span.subspan(70));
    CHECK(b.state.mu_hat.mu1 == doctest::Approx(all.state.mu_hat.mu1).epsilon(1e-12));
    CHECK(b.state.mu_hat.mu3 == doctest::Approx(all.state.mu_hat.mu3).epsilon(1e-10));
    CHECK(b.state.updates == 2);
}

TEST_CASE("RLS rolls back an update that would make the gain non-positive")
{
    const EstimatorState s0 = initial_state(base_config());
    std::vector<Observation> obs;
    for (double I : {200.0, 400.0, 600.0, 800.0})
        obs.push_back({regressor(I, 10.0 + I / 40.0), -0.5 * I});
    const UpdateResult r = rls_update(s0, obs);
    CHECK(r.status == UpdateStatus::nonpositive_gain);
    CHECK(r.state.mu_hat == s0.mu_hat);
    CHECK(r.state.updates == 0);
    CHECK(to_string(r.status) == "nonpositive_gain");
}

TEST_CASE("rejects a covariance that is not positive definite")
{
    EstimatorState s = initial_state(base_config());
    s.covariance(0, 0) = -1.0;
    const auto obs = random_observations(5, 3);
    CHECK(rls_update(s, obs).status == UpdateStatus::singular);
}

TEST_CASE("dynamic window: a shaded sample splits the day")
{
    const PvusaParams mu = oracle::test_params();
    const auto day = oracle::split_day_fixture(mu);
    EstimationConfig cfg = base_config();
    const DayResult r = run_day(initial_state(cfg, mu), day, cfg, 1, 100);
    REQUIRE(r.accepted.size() == 2);
    CHECK(r.accepted[0].anchor == 100);
    CHECK(r.accepted[0].length == 4);
    CHECK(r.accepted[0].available_at == 104);
    CHECK(r.accepted[0].adapted);
    CHECK(r.accepted[0].note.rfind("extension", 0) == 0);
    // The sample after the failing one opens the next search.
    CHECK(r.accepted[1].anchor == 105);
    CHECK(r.accepted[1].length == 3);
    CHECK(r.accepted[1].available_at == 107);
    CHECK(r.accepted[1].note == "end_of_day");
    CHECK(r.rejected.empty());
    CHECK(r.state.updates == 2);
    CHECK(r.state.step == 107);
}

TEST_CASE("dynamic window: a rejected seed moves the anchor by one")
{
    const PvusaParams mu = oracle::test_params();
    auto day = oracle::split_day_fixture(mu);
    day[1].power *= 0.5; // spoils every seed containing sample 1
    EstimationConfig cfg = base_config();
    const DayResult r = run_day(initial_state(cfg, mu), day, cfg);
    REQUIRE(r.rejected.size() >= 2);
    CHECK(r.rejected[0].anchor == 0);
    CHECK(r.rejected[1].anchor == 1);
    CHECK_FALSE(r.rejected[0].accepted);
    for (const auto& w : r.accepted)
        CHECK(w.anchor >= 2);
}

TEST_CASE("days shorter than the minimum window are skipped")
{
    const auto day = oracle::split_day_fixture(oracle::test_params());
    EstimationConfig cfg = base_config();
    const DayResult r = run_day(initial_state(cfg), std::span<const Sample>(day).first(2), cfg);
    CHECK(r.accepted.empty());
    CHECK(r.rejected.empty());
}

TEST_CASE("run over a series without light samples is a no-op")
{
    const SiteConfig arctic{78.0, 15.0, 0.0, 0.0, 1.0};
    std::vector<Sample> series;
    for (const auto& p : clearsky_profile(arctic, sys_days{year{2012} / 12 / 10}, hours{1}))
        series.push_back({p.time, 0.0, -10.0, p.irradiance});
    EstimationConfig cfg = base_config();
    const RunResult r = run(series, cfg);
    CHECK(r.light_samples == 0);
    CHECK(r.log.empty());
    CHECK(r.detected_fraction() == 0.0);
    REQUIRE(r.trajectory.size() == series.size());
    CHECK(r.trajectory.back().params == initial_params(cfg.nominal_power, cfg.box));
}

TEST_CASE("run rejects irregular series")
{
    auto day = oracle::synthetic_day(oracle::test_site(), sys_days{year{2012} / 6 / 1}, oracle::test_params());
    day.erase(day.begin() + 10);
    CHECK_THROWS_AS(run(day, base_config()), InputError);
}

TEST_CASE("trajectory switches at the availability index of each adaptation")
{
    std::vector<Sample> series;
    for (int d = 0; d < 3; ++d) {
        const auto day = oracle::synthetic_day(oracle::test_site(), sys_days{year{2012} / 6 / 1} + days{d},
                                               oracle::test_params());
        series.insert(series.end(), day.begin(), day.end());
    }
    const RunResult r = run(series, base_config());
    REQUIRE(r.trajectory.size() == series.size());
    std::size_t adapted = 0;
    for (const auto& w : r.log) {
        if (!w.adapted)
            continue;
        ++adapted;
        CHECK(r.trajectory[w.available_at].params == w.mu_after);
        CHECK(r.trajectory[w.available_at].updated);
        if (adapted == 1)
            CHECK(r.trajectory[w.anchor].params != w.mu_after);
    }
    CHECK(adapted == r.state.updates);
    CHECK(adapted >= 3);
    const TrajectoryPoint* p = latest_params(r.trajectory, series[5].time);
    REQUIRE(p != nullptr);
    CHECK(p->time == series[5].time);
    CHECK(latest_params(r.trajectory, series[5].time, true)->time == series[4].time);
    CHECK(latest_params(r.trajectory, series[0].time, true) == nullptr);
}

TEST_CASE("noiseless mixed-weather plant: gain recovered within 2% by day 30")
{
    ScenarioConfig sc;
    sc.noise_fraction = 0.0;
    sc.temperature.noise = 0.0;
    sc.day_count = 60;
    const Scenario scenario = generate(sc, 11);
    EstimationConfig cfg = base_config();
    const RunResult r = run(scenario.samples, cfg);
    const std::size_t day30_end = 30 * 24 - 1;
    CHECK(oracle::relative_error(r.trajectory[day30_end].params.mu1, sc.true_params.mu1) < 0.02);
    CHECK(oracle::relative_error(r.state.mu_hat.mu1, sc.true_params.mu1) < 0.02);
}

TEST_CASE("forgetting tracks a drifting plant")
{
    ScenarioConfig first;
    first.noise_fraction = 0.0;
    first.day_count = 40;
    first.mix.clear = 0.8;
    first.mix.uniform = 0.1;
    first.mix.stochastic = 0.1;
    ScenarioConfig second = first;
    second.first_day = first.first_day + days{40};
    second.true_params = {0.9, -1.08e-4, -3.15e-3}; // 10% degradation, same ratios
    const Scenario a = generate(first, 3);
    const Scenario b = generate(second, 4);
    std::vector<Sample> series = a.samples;
    series.insert(series.end(), b.samples.begin(), b.samples.end());

    EstimationConfig cfg = base_config();
    const RunResult r = run(series, cfg);
    CHECK(oracle::relative_error(r.trajectory[40 * 24 - 1].params.mu1, 1.0) < 0.02);
    CHECK(oracle::relative_error(r.state.mu_hat.mu1, 0.9) < 0.03);
}
