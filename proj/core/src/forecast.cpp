#include "pvcsd/forecast.hpp"

#include "pvcsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace pvcsd {

WeatherArchive::WeatherArchive(std::span<const WeatherForecast> forecasts)
{
    for (const auto& f : forecasts)
        add(f);
}

void WeatherArchive::add(const WeatherForecast& f)
{
    if (f.issued_at > f.target)
        throw InputError("weather forecast issued after its target: " + format_timestamp(f.target));
    require_finite(f.irradiance, "forecast irradiance");
    require_finite(f.temperature, "forecast temperature");
    if (f.irradiance < 0.0)
        throw InputError("forecast irradiance must be non-negative");
    auto& list = by_target_[f.target];
    auto pos = std::upper_bound(list.begin(), list.end(), f.issued_at,
                                [](Timestamp t, const WeatherForecast& w) { return t < w.issued_at; });
    list.insert(pos, f);
    ++count_;
}

const WeatherForecast* WeatherArchive::latest(Timestamp target, Timestamp deadline) const
{
    auto it = by_target_.find(target);
    if (it == by_target_.end())
        return nullptr;
    const auto& list = it->second;
    auto pos = std::upper_bound(list.begin(), list.end(), deadline,
                                [](Timestamp t, const WeatherForecast& w) { return t < w.issued_at; });
    if (pos == list.begin())
        return nullptr;
    return &*std::prev(pos);
}

std::string to_string(ForecastKind k)
{
    switch (k) {
    case ForecastKind::day_ahead: return "DA";
    case ForecastKind::hour_ahead: return "HA";
    case ForecastKind::clear_sky: return "CS";
    case ForecastKind::naive: return "ODNP";
    }
    return "?";
}

ForecastKind parse_forecast_kind(std::string_view s)
{
    if (s == "DA") return ForecastKind::day_ahead;
    if (s == "HA") return ForecastKind::hour_ahead;
    if (s == "CS") return ForecastKind::clear_sky;
    if (s == "ODNP") return ForecastKind::naive;
    throw InputError("unknown forecast kind '" + std::string(s) + "'");
}

double point_forecast(const PvusaParams& mu, const WeatherForecast& wf)
{
    return std::max(0.0, power(mu, wf.irradiance, wf.temperature));
}

double clearsky_forecast(const PvusaParams& mu, double clearsky_irradiance, double temperature)
{
    return std::max(0.0, power(mu, clearsky_irradiance, temperature));
}

Timestamp day_ahead_issue_time(Date day, std::chrono::seconds utc_offset)
{
    return local_midnight(day - std::chrono::days{1}, utc_offset) + kDayAheadIssueHour;
}

namespace {

const TrajectoryPoint& require_params(const Trajectory& traj, Timestamp issued, bool strict)
{
    const TrajectoryPoint* p = latest_params(traj, issued, strict);
    if (p == nullptr)
        throw InputError("no parameter estimate available at " + format_timestamp(issued));
    return *p;
}

ForecastSeries hourly_day_series(ForecastKind kind, const Trajectory& traj, const WeatherArchive& weather,
                                 Date day, std::chrono::seconds utc_offset, const SiteConfig* site)
{
    const Timestamp issued = day_ahead_issue_time(day, utc_offset);
    const TrajectoryPoint& params = require_params(traj, issued, false);
    const Timestamp start = local_midnight(day, utc_offset);

    ForecastSeries out;
    out.kind = kind;
    out.entries.reserve(24);
    for (int h = 0; h < 24; ++h) {
        ForecastEntry e;
        e.issued_at = issued;
        e.target = start + std::chrono::hours{h};
        e.params_version = params.time;
        if (const WeatherForecast* wf = weather.latest(e.target, issued)) {
            e.temperature = wf->temperature;
            if (site != nullptr) {
                e.irradiance = clearsky_irradiance(*site, e.target);
                e.power = clearsky_forecast(params.params, e.irradiance, e.temperature);
            } else {
                e.irradiance = wf->irradiance;
                e.power = point_forecast(params.params, *wf);
            }
        }
        out.entries.push_back(e);
    }
    return out;
}

} // namespace

ForecastSeries da_series(const Trajectory& traj, const WeatherArchive& weather, Date day,
                         std::chrono::seconds utc_offset)
{
    return hourly_day_series(ForecastKind::day_ahead, traj, weather, day, utc_offset, nullptr);
}

ForecastSeries cs_series(const Trajectory& traj, const WeatherArchive& weather, const SiteConfig& site, Date day)
{
    return hourly_day_series(ForecastKind::clear_sky, traj, weather, day, site.utc_offset(), &site);
}

ForecastSeries ha_series(const Trajectory& traj, const WeatherArchive& weather, const SiteConfig& site,
                         Timestamp operating_hour)
{
    using namespace std::chrono;
    const auto offset = site.utc_offset();
    const Date day = local_day(operating_hour, offset);
    const Timestamp day_end = local_midnight(day + days{1}, offset);
    const Timestamp issued = operating_hour - kHourAheadLead;

    ForecastSeries out;
    out.kind = ForecastKind::hour_ahead;
    if (!(clearsky_irradiance(site, operating_hour) > 0.0))
        return out;
    const TrajectoryPoint& params = require_params(traj, issued, true);

    for (Timestamp t = operating_hour; t < day_end && out.entries.size() < kHourAheadHorizon; t += hours{1}) {
        if (!(clearsky_irradiance(site, t) > 0.0))
            break;
        ForecastEntry e;
        e.issued_at = issued;
        e.target = t;
        e.params_version = params.time;
        if (const WeatherForecast* wf = weather.latest(t, issued)) {
            e.irradiance = wf->irradiance;
            e.temperature = wf->temperature;
            e.power = point_forecast(params.params, *wf);
        }
        out.entries.push_back(e);
    }
    return out;
}

ForecastSeries odnp(std::span<const Sample> measured, Date day, std::chrono::seconds utc_offset)
{
    using namespace std::chrono;
    const Timestamp start = local_midnight(day, utc_offset);
    const Timestamp end = start + days{1};
    const Timestamp prev_start = start - days{1};

    std::unordered_map<long long, const Sample*> by_time;
    for (const Sample& s : measured) {
        if (s.time >= prev_start && s.time < end)
            by_time.emplace(s.time.time_since_epoch().count(), &s);
    }

    ForecastSeries out;
    out.kind = ForecastKind::naive;
    for (const Sample& s : measured) {
        if (s.time < start || s.time >= end)
            continue;
        auto it = by_time.find((s.time - days{1}).time_since_epoch().count());
        if (it == by_time.end())
            throw InputError("naive predictor needs day " + format_date(day - days{1}) + " at "
                             + format_timestamp(s.time - days{1}));
        ForecastEntry e;
        e.issued_at = start;
        e.target = s.time;
        e.power = it->second->power;
        e.params_version = start;
        out.entries.push_back(e);
    }
    if (out.entries.empty())
        throw InputError("no measurements on day " + format_date(day));
    return out;
}

Trajectory srls_baseline(std::span<const Sample> samples, std::span<const double> measured_irradiance,
                         const EstimationConfig& cfg)
{
    if (samples.size() != measured_irradiance.size())
        throw InputError("measured irradiance must align with samples");
    EstimatorState state = initial_state(cfg);
    Trajectory out;
    out.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        bool updated = false;
        if (s.clearsky_irradiance > 0.0 && std::isfinite(measured_irradiance[i])) {
            const Observation obs{regressor(measured_irradiance[i], s.temperature), s.power};
            const UpdateResult r = rls_update(state, std::span<const Observation>(&obs, 1));
            if (r.status == UpdateStatus::applied) {
                state = r.state;
                updated = true;
            }
        }
        state.step = i;
        out.push_back({s.time, state.mu_hat, updated});
    }
    return out;
}

std::vector<ForecastEntry> latest_per_target(std::span<const ForecastEntry> entries)
{
    std::map<Timestamp, ForecastEntry> best;
    for (const auto& e : entries) {
        auto [it, inserted] = best.try_emplace(e.target, e);
        if (!inserted && e.issued_at > it->second.issued_at)
            it->second = e;
    }
    std::vector<ForecastEntry> out;
    out.reserve(best.size());
    for (auto& [t, e] : best)
        out.push_back(e);
    return out;
}

ForecastSeries day_ahead_range(ForecastKind kind, const Trajectory& traj, const WeatherArchive& weather,
                               const SiteConfig& site, Date first, Date last, std::size_t* skipped)
{
    if (kind != ForecastKind::day_ahead && kind != ForecastKind::clear_sky)
        throw InputError("day-ahead range supports DA and CS products only");
    const auto offset = site.utc_offset();
    ForecastSeries out;
    out.kind = kind;
    std::size_t missing = 0;
    for (Date d = first; d <= last; d += std::chrono::days{1}) {
        if (latest_params(traj, day_ahead_issue_time(d, offset)) == nullptr) {
            ++missing;
            continue;
        }
        ForecastSeries day = kind == ForecastKind::day_ahead ? da_series(traj, weather, d, offset)
                                                             : cs_series(traj, weather, site, d);
        out.entries.insert(out.entries.end(), day.entries.begin(), day.entries.end());
    }
    if (skipped != nullptr)
        *skipped = missing;
    return out;
}

AlignedForecast align_forecast(std::span<const ForecastEntry> entries, std::span<const Sample> measured,
                               std::chrono::seconds utc_offset, int start_day)
{
    AlignedForecast out;
    if (measured.empty())
        return out;
    std::map<Timestamp, double> by_target;
    for (const ForecastEntry& e : latest_per_target(entries)) {
        if (e.power)
            by_target.emplace(e.target, *e.power);
    }
    const Date first = local_day(measured.front().time, utc_offset);
    for (const Sample& s : measured) {
        const auto day_number = (local_day(s.time, utc_offset) - first).count() + 1;
        if (day_number < start_day || !(s.clearsky_irradiance > 0.0))
            continue;
        auto it = by_target.find(s.time);
        if (it == by_target.end())
            continue;
        out.times.push_back(s.time);
        out.predicted.push_back(it->second);
        out.measured.push_back(s.power);
    }
    return out;
}

} // namespace pvcsd
