#pragma once

#include "pvcsd/clearsky.hpp"
#include "pvcsd/csdetect.hpp"
#include "pvcsd/estimator.hpp"
#include "pvcsd/forecast.hpp"
#include "pvcsd/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pvcsd {

// CSV files are comma separated with a single header row. Numbers are written
// with 17 significant digits so every double survives a round trip; an empty
// field marks a missing value. Timestamps are ISO-8601 UTC.
//
// Dataset columns, in this order:
//   timestamp, p_m_kw, t_c[, i_m_wm2][, i_fc_wm2, t_fc_c]
// Optional columns may be missing entirely or be empty in single rows.
struct Dataset {
    std::vector<Sample> samples;             // clearsky_irradiance filled from the site
    std::vector<double> measured_irradiance; // NaN where missing; empty without the column
    std::vector<WeatherForecast> weather;    // day-ahead issued, rows with both forecast fields
    bool has_measured_irradiance = false;
    bool has_weather = false;
};

// Throws InputError with the offending line number on empty input, unknown
// header, unparsable or negative values, non-monotone or irregular timestamps.
Dataset read_dataset(std::istream& in, const SiteConfig& site, const std::string& source = "<input>");
Dataset load_dataset(const std::filesystem::path& path, const SiteConfig& site);

void write_dataset(std::ostream& out, const Dataset& data);
void save_dataset(const std::filesystem::path& path, const Dataset& data);

// timestamp, mu1, mu2, mu3, updated
void write_trajectory(std::ostream& out, const Trajectory& traj);
Trajectory read_trajectory(std::istream& in, const std::string& source = "<input>");

// issued_at, target, kind, p_hat_kw, params_version
void write_forecast(std::ostream& out, const ForecastSeries& series);
ForecastSeries read_forecast(std::istream& in, const std::string& source = "<input>");

// day, anchor, start, length, test1, test2, test3, accepted, adapted,
// available_at, mu1, mu2, mu3, note
void write_detection_log(std::ostream& out, std::span<const WindowRecord> log);
std::vector<WindowRecord> read_detection_log(std::istream& in, const std::string& source = "<input>");

// metric, value (rmse, mbe, mape, nrmse, r2, rmse_np, mape_np, n_samples)
void write_metrics(std::ostream& out, const MetricsReport& report);
MetricsReport read_metrics(std::istream& in, const std::string& source = "<input>");

// issued_at, target, i_hat_wm2, t_hat_c
void write_weather(std::ostream& out, std::span<const WeatherForecast> weather);
std::vector<WeatherForecast> read_weather(std::istream& in, const std::string& source = "<input>");

// day, rmse_kw, measured_std_kw, n_samples
void write_daily_rmse(std::ostream& out, std::span<const DailyRmse> rows);
std::vector<DailyRmse> read_daily_rmse(std::istream& in, const std::string& source = "<input>");

// Shortest representation that parses back to the same double.
std::string format_number(double v);

// File helpers: throw InputError when the path cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace pvcsd
