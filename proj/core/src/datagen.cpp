#include "pvcsd/datagen.hpp"

#include "pvcsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pvcsd {

std::string to_string(DayType t)
{
    switch (t) {
    case DayType::clear: return "clear";
    case DayType::uniform: return "uniform";
    case DayType::stochastic: return "stochastic";
    case DayType::scaled: return "scaled";
    }
    return "?";
}

DayType parse_day_type(std::string_view s)
{
    if (s == "clear" || s == "C") return DayType::clear;
    if (s == "uniform" || s == "U") return DayType::uniform;
    if (s == "stochastic" || s == "S") return DayType::stochastic;
    if (s == "scaled") return DayType::scaled;
    throw InputError("unknown day type '" + std::string(s) + "'");
}

void ScenarioConfig::validate() const
{
    box.validate();
    site.validate();
    if (!(true_params.mu1 > 0.0))
        throw InputError("true mu1 must be positive");
    if (!box.contains(true_params.eta2(), true_params.eta3()))
        throw InputError("true eta ratios lie outside the eta box");
    if (!(nominal_power > 0.0))
        throw InputError("nominal power must be positive");
    if (day_count <= 0)
        throw InputError("day count must be positive");
    if (!schedule.empty() && schedule.size() != static_cast<std::size_t>(day_count))
        throw InputError("explicit schedule must list one plan per day");
    for (const DayPlan& p : schedule) {
        if ((p.type == DayType::uniform || p.type == DayType::scaled) && !(p.beta > 0.0 && p.beta < 1.0))
            throw InputError("cloud cover factor beta must lie in (0, 1)");
        if (p.type == DayType::stochastic && !(p.intensity > 0.0))
            throw InputError("stochastic intensity must be positive");
    }
    if (mix.clear < 0.0 || mix.uniform < 0.0 || mix.stochastic < 0.0
        || !(mix.clear + mix.uniform + mix.stochastic > 0.0))
        throw InputError("weather mix weights must be non-negative and not all zero");
    if (!(mix.uniform_beta_min > 0.0 && mix.uniform_beta_min <= mix.uniform_beta_max && mix.uniform_beta_max < 1.0))
        throw InputError("uniform beta range must lie in (0, 1)");
    if (!(mix.intensity_min > 0.0 && mix.intensity_min <= mix.intensity_max))
        throw InputError("stochastic intensity range must be positive");
    if (!(noise_fraction >= 0.0))
        throw InputError("noise fraction must be non-negative");
    if (temperature.noise < 0.0)
        throw InputError("temperature noise must be non-negative");
    using namespace std::chrono;
    if (step <= seconds::zero() || days{1} % step != seconds::zero())
        throw InputError("sampling step must divide 24 h");
}

namespace {

DayPlan draw_plan(const WeatherMix& mix, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double total = mix.clear + mix.uniform + mix.stochastic;
    const double x = u(rng) * total;
    DayPlan p;
    if (x < mix.clear) {
        p.type = DayType::clear;
    } else if (x < mix.clear + mix.uniform) {
        p.type = DayType::uniform;
        p.beta = mix.uniform_beta_min + u(rng) * (mix.uniform_beta_max - mix.uniform_beta_min);
    } else {
        p.type = DayType::stochastic;
        p.intensity = mix.intensity_min + u(rng) * (mix.intensity_max - mix.intensity_min);
    }
    return p;
}

} // namespace

Scenario generate(const ScenarioConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Scenario out;
    out.utc_offset = cfg.site.utc_offset();
    const auto per_day = static_cast<std::size_t>(std::chrono::days{1} / cfg.step);
    out.samples.reserve(per_day * static_cast<std::size_t>(cfg.day_count));
    out.irradiance.reserve(out.samples.capacity());

    constexpr double kCloudCorrelation = 0.6;
    const double noise_std = cfg.noise_fraction * cfg.nominal_power;

    for (int d = 0; d < cfg.day_count; ++d) {
        const Date date = cfg.first_day + std::chrono::days{d};
        const DayPlan plan = cfg.schedule.empty() ? draw_plan(cfg.mix, rng) : cfg.schedule[static_cast<std::size_t>(d)];
        out.days.push_back({date, plan});

        const auto profile = clearsky_profile(cfg.site, date, cfg.step);
        double z = normal(rng);
        for (const ProfilePoint& pt : profile) {
            const double hour = local_hour(pt.time, out.utc_offset);
            const double temp = cfg.temperature.mean
                              + cfg.temperature.amplitude
                                    * std::cos(2.0 * std::numbers::pi * (hour - cfg.temperature.peak_hour) / 24.0)
                              + cfg.temperature.noise * normal(rng);

            z = kCloudCorrelation * z + std::sqrt(1.0 - kCloudCorrelation * kCloudCorrelation) * normal(rng);
            double attenuation = 1.0;
            if (plan.type == DayType::uniform)
                attenuation = plan.beta;
            else if (plan.type == DayType::stochastic)
                attenuation = std::exp(-plan.intensity * std::abs(z));
            const double irradiance = attenuation * pt.irradiance;

            double p = 0.0;
            if (irradiance > 0.0) {
                p = power(cfg.true_params, irradiance, temp);
                if (noise_std > 0.0)
                    p += noise_std * normal(rng);
                p = std::max(0.0, p);
                if (plan.type == DayType::scaled)
                    p *= plan.beta;
            }
            out.samples.push_back({pt.time, p, temp, pt.irradiance});
            out.irradiance.push_back(irradiance);
        }
    }
    return out;
}

Scenario scale_clear_days(const Scenario& original, double pod, double beta_min, double beta_max, std::uint64_t seed)
{
    if (!(pod >= 0.0 && pod <= 1.0))
        throw InputError("POD must lie in [0, 1]");
    if (!(beta_min > 0.0 && beta_min <= beta_max && beta_max < 1.0))
        throw InputError("scaling range must lie in (0, 1)");
    Scenario out = original;
    const auto wanted = static_cast<std::size_t>(std::llround(pod * static_cast<double>(original.days.size())));
    if (wanted == 0)
        return out;

    std::vector<std::size_t> clear_days;
    for (std::size_t i = 0; i < original.days.size(); ++i) {
        if (original.days[i].plan.type == DayType::clear)
            clear_days.push_back(i);
    }
    if (wanted > clear_days.size())
        throw InputError("POD " + std::to_string(pod) + " needs " + std::to_string(wanted) + " clear days, only "
                         + std::to_string(clear_days.size()) + " available");

    std::mt19937_64 rng(seed);
    std::shuffle(clear_days.begin(), clear_days.end(), rng);
    clear_days.resize(wanted);
    std::sort(clear_days.begin(), clear_days.end());
    std::uniform_real_distribution<double> u(0.0, 1.0);

    for (std::size_t idx : clear_days) {
        DayLabel& label = out.days[idx];
        label.plan.type = DayType::scaled;
        label.plan.beta = beta_min + u(rng) * (beta_max - beta_min);
        for (Sample& s : out.samples) {
            if (local_day(s.time, out.utc_offset) == label.date)
                s.power *= label.plan.beta;
        }
    }
    return out;
}

std::vector<WeatherForecast> synthesize_weather_forecasts(const Scenario& scenario, const ForecastNoise& noise,
                                                          std::uint64_t seed)
{
    if (!(noise.irradiance_nrmse >= 0.0) || !(noise.temperature_rmse >= 0.0))
        throw InputError("forecast noise levels must be non-negative");
    if (std::abs(noise.irradiance_correlation) >= 1.0)
        throw InputError("irradiance error correlation must lie in (-1, 1)");
    if (std::abs(noise.temperature_bias) > noise.temperature_rmse)
        throw InputError("temperature bias cannot exceed its RMSE");

    const std::size_t n = scenario.samples.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Unit-scale correlated error shape, proportional to clear-sky irradiance.
    std::vector<double> shape(n, 0.0);
    std::vector<double> temp_err(n, 0.0);
    const double rho = noise.irradiance_correlation;
    const double t_std = std::sqrt(noise.temperature_rmse * noise.temperature_rmse
                                   - noise.temperature_bias * noise.temperature_bias);
    double z = 0.0;
    Date current{};
    for (std::size_t i = 0; i < n; ++i) {
        const Date day = local_day(scenario.samples[i].time, scenario.utc_offset);
        if (i == 0 || day != current) {
            z = normal(rng);
            current = day;
        } else {
            z = rho * z + std::sqrt(1.0 - rho * rho) * normal(rng);
        }
        shape[i] = z * scenario.samples[i].clearsky_irradiance;
        temp_err[i] = -noise.temperature_bias + t_std * normal(rng);
    }

    // Spread of the true irradiance over light hours.
    double mean = 0.0;
    std::size_t light = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (scenario.samples[i].clearsky_irradiance > 0.0) {
            mean += scenario.irradiance[i];
            ++light;
        }
    }
    std::vector<double> forecast(n, 0.0);
    if (light > 0) {
        mean /= static_cast<double>(light);
        double spread = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (scenario.samples[i].clearsky_irradiance > 0.0)
                spread += (scenario.irradiance[i] - mean) * (scenario.irradiance[i] - mean);
        }
        // Fixed-point calibration of the error scale; clipping at zero makes the
        // achieved NRMSE slightly nonlinear in the scale.
        double scale = 1.0;
        for (int iter = 0; iter < 30; ++iter) {
            double sq = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                forecast[i] = std::max(0.0, scenario.irradiance[i] + scale * shape[i]);
                if (scenario.samples[i].clearsky_irradiance > 0.0)
                    sq += (forecast[i] - scenario.irradiance[i]) * (forecast[i] - scenario.irradiance[i]);
            }
            const double achieved = spread > 0.0 ? std::sqrt(sq / spread) : 0.0;
            if (achieved <= 0.0 || noise.irradiance_nrmse == 0.0) {
                if (noise.irradiance_nrmse == 0.0)
                    scale = 0.0;
                else
                    break;
                continue;
            }
            scale *= noise.irradiance_nrmse / achieved;
        }
        for (std::size_t i = 0; i < n; ++i)
            forecast[i] = std::max(0.0, scenario.irradiance[i] + scale * shape[i]);
    }

    std::vector<WeatherForecast> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Sample& s = scenario.samples[i];
        const Date day = local_day(s.time, scenario.utc_offset);
        out.push_back({day_ahead_issue_time(day, scenario.utc_offset), s.time, forecast[i],
                       s.temperature + temp_err[i]});
    }
    return out;
}

} // namespace pvcsd
