#include <doctest.h>

#include "oracles.hpp"

#include <pvcsd/datagen.hpp>
#include <pvcsd/error.hpp>
#include <pvcsd/io.hpp>

#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

using namespace pvcsd;
using namespace std::chrono;

namespace {

const SiteConfig kSite = oracle::test_site();

std::string error_of(const std::string& csv)
{
    std::istringstream in(csv);
    try {
        read_dataset(in, kSite, "data.csv");
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

Dataset two_days()
{
    Dataset d;
    for (Date day : {sys_days{year{2012} / 6 / 1}, sys_days{year{2012} / 6 / 2}}) {
        const auto s = oracle::synthetic_day(kSite, day, oracle::test_params(), 0.9);
        d.samples.insert(d.samples.end(), s.begin(), s.end());
    }
    return d;
}

} // namespace

TEST_CASE("numbers survive a text round trip")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(std::stod(format_number(x)) == x);
    }
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "-0");
}

TEST_CASE("dataset: 48-row fixture loads as two days")
{
    const Dataset d = two_days();
    std::ostringstream out;
    write_dataset(out, d);
    std::istringstream in(out.str());
    const Dataset back = read_dataset(in, kSite);
    REQUIRE(back.samples.size() == 48);
    CHECK(back.samples == d.samples); // clear-sky channel recomputed identically
    CHECK_FALSE(back.has_measured_irradiance);
    CHECK_FALSE(back.has_weather);

    std::set<Date> days;
    for (const auto& s : back.samples)
        days.insert(local_day(s.time, kSite.utc_offset()));
    CHECK(days.size() == 2);
    const auto light = light_hours(std::span<const Sample>(back.samples).first(24));
    REQUIRE(light.has_value());
    CHECK(light->first == 5);
    CHECK(light->last == 18); // sun at 1.4 deg in the north-west at 19:00 is behind the panel
}

TEST_CASE("dataset with optional channels round-trips")
{
    ScenarioConfig sc;
    sc.day_count = 3;
    const Scenario s = generate(sc, 4);
    Dataset d;
    d.samples = s.samples;
    d.measured_irradiance = s.irradiance;
    d.measured_irradiance[7] = std::nan("");
    d.weather = synthesize_weather_forecasts(s, ForecastNoise{}, 2);
    d.weather.erase(d.weather.begin() + 12);
    d.has_measured_irradiance = true;
    d.has_weather = true;
    std::ostringstream out;
    write_dataset(out, d);
    std::istringstream in(out.str());
    const Dataset back = read_dataset(in, sc.site);
    CHECK(back.samples == d.samples);
    CHECK(std::isnan(back.measured_irradiance[7]));
    CHECK(back.measured_irradiance[8] == d.measured_irradiance[8]);
    CHECK(back.weather == d.weather);
    std::ostringstream again;
    write_dataset(again, back);
    CHECK(again.str() == out.str());
}

TEST_CASE("dataset errors carry line numbers")
{
    CHECK(error_of("").find("empty dataset") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\n").find("empty dataset") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\n2012-06-01T10:00Z,5,20\n2012-06-01T11:00Z,-3,20\n")
              .find("data.csv:3:") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\n2012-06-01T10:00Z,5,20\n2012-06-01T11:00Z,-3,20\n").find("row 2")
          != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\n2012-06-01T10:00Z,5,20\n2012-06-01T09:00Z,3,20\n")
              .find("data.csv:3: timestamps must be strictly increasing") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\n2012-06-01T10:00Z,5,20\n2012-06-01T11:00Z,3,20\n2012-06-01T13:00Z,3,20\n")
              .find("data.csv:4: irregular") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\n2012-06-01T10:00Z,abc,20\n").find("data.csv:2: cannot parse p_m_kw")
          != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\n2012-06-01T10:00Z,5\n").find("data.csv:2:") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw\n").find("missing required column 't_c'") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c,foo\n").find("unknown column") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c,i_fc_wm2\n").find("together") != std::string::npos);
    CHECK(error_of("timestamp,p_m_kw,t_c\nnot-a-time,5,20\n").find("data.csv:2:") != std::string::npos);
    CHECK_THROWS_AS(load_dataset("/nonexistent/data.csv", kSite), InputError);
}

TEST_CASE("trajectory round trip")
{
    Trajectory traj;
    const Timestamp t0 = sys_days{year{2012} / 6 / 1};
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 50; ++i)
        traj.push_back({t0 + hours{i}, PvusaParams{1.0 + n(rng) / 7, -1e-4 * (1 + n(rng) / 3), -3e-3 / 3.3}, i % 3 == 0});
    std::ostringstream out;
    write_trajectory(out, traj);
    CHECK(out.str().rfind("timestamp,mu1,mu2,mu3,updated\n", 0) == 0);
    std::istringstream in(out.str());
    CHECK(read_trajectory(in) == traj);
}

TEST_CASE("forecast round trip keeps gaps")
{
    ForecastSeries s;
    s.kind = ForecastKind::hour_ahead;
    const Timestamp t0 = sys_days{year{2012} / 6 / 1};
    for (int i = 0; i < 10; ++i)
        s.entries.push_back({t0, t0 + hours{i}, i == 4 ? std::nullopt : std::optional<double>(i * 10.0 / 3.0),
                             t0 - hours{1}, 0.0, 0.0});
    std::ostringstream out;
    write_forecast(out, s);
    CHECK(out.str().rfind("issued_at,target,kind,p_hat_kw,params_version\n", 0) == 0);
    std::istringstream in(out.str());
    const ForecastSeries back = read_forecast(in);
    CHECK(back.kind == s.kind);
    CHECK(back.entries == s.entries);

    std::istringstream mixed("issued_at,target,kind,p_hat_kw,params_version\n"
                             "2012-06-01T00:00Z,2012-06-01T01:00Z,DA,1,2012-06-01T00:00Z\n"
                             "2012-06-01T00:00Z,2012-06-01T02:00Z,HA,1,2012-06-01T00:00Z\n");
    CHECK_THROWS_AS(read_forecast(mixed), InputError);
}

TEST_CASE("detection log round trip and consistency with the estimator")
{
    ScenarioConfig sc;
    sc.day_count = 8;
    const Scenario s = generate(sc, 12);
    EstimationConfig cfg;
    cfg.nominal_power = sc.nominal_power;
    cfg.utc_offset = sc.site.utc_offset();
    const RunResult r = run(s.samples, cfg);
    std::ostringstream out;
    write_detection_log(out, r.log);
    std::istringstream in(out.str());
    const auto back = read_detection_log(in);
    CHECK(back == r.log);
    std::size_t accepted_rows = 0;
    for (const auto& w : back)
        accepted_rows += w.accepted ? 1 : 0;
    std::size_t accepted = 0;
    for (const auto& w : r.log)
        accepted += w.accepted;
    CHECK(accepted_rows == accepted);
    CHECK(accepted > 0);
}

TEST_CASE("metrics round trip with absent fields")
{
    MetricsReport m{12.25, -3.0, std::nullopt, 0.31, 1 - 0.31 * 0.31, 12.25 / 960, 4.4, 321};
    std::ostringstream out;
    write_metrics(out, m);
    CHECK(out.str().find("mape,\n") != std::string::npos);
    std::istringstream in(out.str());
    CHECK(read_metrics(in) == m);
    std::istringstream partial("metric,value\nrmse,1\n");
    CHECK_THROWS_AS(read_metrics(partial), InputError);
}

TEST_CASE("weather and daily RMSE round trips")
{
    const Timestamp t0 = sys_days{year{2012} / 6 / 1};
    const std::vector<WeatherForecast> wx{{t0, t0 + hours{30}, 512.125, 21.0 / 3.0}, {t0, t0 + hours{31}, 0.0, -4.5}};
    std::ostringstream out;
    write_weather(out, wx);
    std::istringstream in(out.str());
    CHECK(read_weather(in) == wx);

    const std::vector<DailyRmse> rows{{sys_days{year{2012} / 6 / 1}, 31.0 / 7, 101.5, 14},
                                      {sys_days{year{2012} / 6 / 2}, 0.0, 0.0, 13}};
    std::ostringstream o2;
    write_daily_rmse(o2, rows);
    std::istringstream i2(o2.str());
    CHECK(read_daily_rmse(i2) == rows);
}

TEST_CASE("file helpers")
{
    const auto dir = std::filesystem::temp_directory_path() / "pvcsd_io_test";
    std::filesystem::create_directories(dir);
    write_file(dir / "x.txt", "hello\n");
    CHECK(read_file(dir / "x.txt") == "hello\n");
    CHECK_THROWS_AS(write_file(dir / "missing" / "x.txt", "a"), InputError);
    CHECK_THROWS_AS(read_file(dir / "nope.txt"), InputError);
    std::filesystem::remove_all(dir);
}
