#pragma once

#include "pvcsd/clearsky.hpp"
#include "pvcsd/csdetect.hpp"
#include "pvcsd/estimator.hpp"
#include "pvcsd/pvusa.hpp"
#include "pvcsd/time.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pvcsd {

// Weather forecast for `target` available from `issued_at`. The irradiance is
// already projected on the panel plane.
struct WeatherForecast {
    Timestamp issued_at;
    Timestamp target;
    double irradiance = 0.0;  // W/m^2
    double temperature = 0.0; // degC

    friend bool operator==(const WeatherForecast&, const WeatherForecast&) = default;
};

// Lookup of the freshest forecast for a target given an issuance deadline.
class WeatherArchive {
public:
    WeatherArchive() = default;
    // Throws InputError on an entry with issued_at > target or negative irradiance.
    explicit WeatherArchive(std::span<const WeatherForecast> forecasts);

    void add(const WeatherForecast& f);
    // Latest-issued forecast for target with issued_at <= deadline; nullptr if none.
    const WeatherForecast* latest(Timestamp target, Timestamp deadline) const;
    std::size_t size() const { return count_; }

private:
    std::map<Timestamp, std::vector<WeatherForecast>> by_target_; // each list sorted by issued_at
    std::size_t count_ = 0;
};

enum class ForecastKind { day_ahead, hour_ahead, clear_sky, naive };

std::string to_string(ForecastKind k);       // "DA", "HA", "CS", "ODNP"
ForecastKind parse_forecast_kind(std::string_view s);

struct ForecastEntry {
    Timestamp issued_at;
    Timestamp target;
    std::optional<double> power; // kW; empty marks a coverage gap
    Timestamp params_version;    // time stamp of the parameter estimate used
    // Inputs the entry was computed from (not serialized).
    double irradiance = 0.0;
    double temperature = 0.0;

    friend bool operator==(const ForecastEntry&, const ForecastEntry&) = default;
};

struct ForecastSeries {
    ForecastKind kind = ForecastKind::day_ahead;
    std::vector<ForecastEntry> entries;
};

// phi'(I_hat, T_hat) * mu, floored at zero.
double point_forecast(const PvusaParams& mu, const WeatherForecast& wf);

// phi'(I_cs, T_hat) * mu, floored at zero like every emitted forecast.
double clearsky_forecast(const PvusaParams& mu, double clearsky_irradiance, double temperature);

inline constexpr std::chrono::hours kDayAheadIssueHour{6};
inline constexpr std::chrono::minutes kHourAheadLead{105};
inline constexpr std::size_t kHourAheadHorizon = 7;

// Issuance time of the day-ahead product for local day d: 06:00 local of d-1.
Timestamp day_ahead_issue_time(Date day, std::chrono::seconds utc_offset);

// Day-ahead forecast for local day `day`: 24 hourly entries from local
// midnight, all priced with the latest estimate at or before issuance.
// Throws InputError when no estimate exists yet.
ForecastSeries da_series(const Trajectory& traj, const WeatherArchive& weather, Date day,
                         std::chrono::seconds utc_offset);

// Like da_series with the clear-sky irradiance at each target replacing the
// irradiance forecast.
ForecastSeries cs_series(const Trajectory& traj, const WeatherArchive& weather, const SiteConfig& site, Date day);

// Hour-ahead forecast for the operating hour starting at `operating_hour`:
// issued 105 minutes earlier, covering up to seven light hours of the same
// day. Parameter version strictly precedes issuance. Empty when the
// operating hour itself is dark.
ForecastSeries ha_series(const Trajectory& traj, const WeatherArchive& weather, const SiteConfig& site,
                         Timestamp operating_hour);

// One-day-ahead naive predictor: measured power of day d-1 at the same time
// of day. Throws InputError when day d-1 is not fully covered.
ForecastSeries odnp(std::span<const Sample> measured, Date day, std::chrono::seconds utc_offset);

// Complete-information baseline: plain RLS on every light-hour sample with
// the measured irradiance in the regressor. measured_irradiance aligns with
// samples. One trajectory point per sample.
Trajectory srls_baseline(std::span<const Sample> samples, std::span<const double> measured_irradiance,
                         const EstimationConfig& cfg);

// Keeps, for every target, the entry with the latest issuance.
std::vector<ForecastEntry> latest_per_target(std::span<const ForecastEntry> entries);

// DA or CS products for every local day in [first, last]. Days whose
// issuance precedes the first estimate are skipped and counted in *skipped.
ForecastSeries day_ahead_range(ForecastKind kind, const Trajectory& traj, const WeatherArchive& weather,
                               const SiteConfig& site, Date first, Date last, std::size_t* skipped = nullptr);

// Pairs forecast and measured power at light-hour samples (I_cs > 0) of days
// numbered >= start_day (day 1 is the first local day of `measured`). When a
// target was forecast several times the latest issuance wins; gaps are dropped.
struct AlignedForecast {
    std::vector<Timestamp> times;
    std::vector<double> predicted;
    std::vector<double> measured;
};

AlignedForecast align_forecast(std::span<const ForecastEntry> entries, std::span<const Sample> measured,
                               std::chrono::seconds utc_offset, int start_day);

} // namespace pvcsd
