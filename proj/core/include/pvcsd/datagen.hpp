#pragma once

#include "pvcsd/clearsky.hpp"
#include "pvcsd/csdetect.hpp"
#include "pvcsd/forecast.hpp"
#include "pvcsd/pvusa.hpp"
#include "pvcsd/time.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pvcsd {

// Synthetic plant and weather generator.
//
// True irradiance per day type:
//   clear       I = I_cs
//   uniform     I = beta * I_cs (constant cloud cover factor)
//   stochastic  I = c(j) * I_cs, c(j) = exp(-intensity * |z(j)|) with z an
//               hourly AR(1) standard normal process (rho = 0.6)
//   scaled      a clear day whose *power* curve was multiplied by beta
//               afterwards (see scale_clear_days)
enum class DayType { clear, uniform, stochastic, scaled };

std::string to_string(DayType t);
DayType parse_day_type(std::string_view s);

struct DayPlan {
    DayType type = DayType::clear;
    double beta = 1.0;      // uniform and scaled days
    double intensity = 0.0; // stochastic days

    friend bool operator==(const DayPlan&, const DayPlan&) = default;
};

// Probabilities of each day type when no explicit schedule is given.
struct WeatherMix {
    double clear = 0.6;
    double uniform = 0.15;
    double stochastic = 0.25;
    double uniform_beta_min = 0.5;
    double uniform_beta_max = 0.9;
    double intensity_min = 0.5;
    double intensity_max = 1.5;
};

// T(t) = mean + amplitude * cos(2 pi (hour - peak_hour) / 24) + N(0, noise^2).
struct TemperatureProfile {
    double mean = 18.0;
    double amplitude = 6.0;
    double peak_hour = 15.0; // local time
    double noise = 0.5;
};

struct ScenarioConfig {
    PvusaParams true_params{1.0, -1.2e-4, -3.5e-3};
    double nominal_power = 960.0; // kW
    SiteConfig site{40.35, 18.17, 10.6, -10.0, 1.0};
    Date first_day = std::chrono::sys_days{std::chrono::year{2012} / 3 / 5};
    int day_count = 60;
    // Explicit per-day plan; when non-empty it must hold day_count entries
    // and overrides the random mix.
    std::vector<DayPlan> schedule;
    WeatherMix mix;
    TemperatureProfile temperature;
    double noise_fraction = 0.005; // measurement noise std as a fraction of P_nom
    std::chrono::seconds step{3600};
    EtaBox box;

    // Throws InputError when the true ratios fall outside the box or any
    // field is out of range.
    void validate() const;
};

struct DayLabel {
    Date date;
    DayPlan plan;

    friend bool operator==(const DayLabel&, const DayLabel&) = default;
};

struct Scenario {
    // Limited-information view: measured power, temperature, clear-sky irradiance.
    std::vector<Sample> samples;
    // Ground truth aligned with samples.
    std::vector<double> irradiance;
    std::vector<DayLabel> days;
    std::chrono::seconds utc_offset{0};
};

// Deterministic given (config, seed).
Scenario generate(const ScenarioConfig& cfg, std::uint64_t seed);

// Converts round(pod * days) clear days into uniformly scaled power curves,
// beta ~ U[beta_min, beta_max]. The input scenario is left untouched so it can
// serve as the error reference. Throws InputError when not enough clear days exist.
Scenario scale_clear_days(const Scenario& original, double pod, double beta_min, double beta_max,
                          std::uint64_t seed);

// Synthetic day-ahead weather forecasts (issued 06:00 local of the previous
// day) for every sample of the scenario.
struct ForecastNoise {
    // Target NRMSE of forecast against true irradiance over light hours.
    double irradiance_nrmse = 0.44;
    double irradiance_correlation = 0.7; // lag-one correlation of the hourly error
    double temperature_rmse = 1.9;
    double temperature_bias = 0.9;       // mean of (true - forecast)
};

std::vector<WeatherForecast> synthesize_weather_forecasts(const Scenario& scenario, const ForecastNoise& noise,
                                                          std::uint64_t seed);

} // namespace pvcsd
