#pragma once

#include "pvcsd/time.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pvcsd {

// Forecast error measures over an index set K. Errors are measured minus
// predicted. Percentages are in percent.
struct MetricsReport {
    double rmse = 0.0;              // kW
    double mbe = 0.0;               // kW
    std::optional<double> mape;     // %, samples with zero measured power excluded
    std::optional<double> nrmse;    // absent when measured power is constant over K
    std::optional<double> r2;       // 1 - nrmse^2
    double rmse_np = 0.0;           // rmse / P_nom
    double mape_np = 0.0;           // %, relative to P_nom
    std::size_t n_samples = 0;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Throws InputError on size mismatch, empty mask, out-of-range mask index or
// non-positive nominal power.
MetricsReport evaluate(std::span<const double> predicted, std::span<const double> measured, double nominal_power,
                       std::span<const std::size_t> mask);

// All indices.
MetricsReport evaluate(std::span<const double> predicted, std::span<const double> measured, double nominal_power);

struct DailyRmse {
    Date day;
    double rmse = 0.0;         // kW
    double measured_std = 0.0; // kW, population standard deviation
    std::size_t n_samples = 0;

    friend bool operator==(const DailyRmse&, const DailyRmse&) = default;
};

// Per local day RMSE over the samples flagged in `include` (light hours),
// with the spread of measured power that day. Days without included samples
// are skipped.
std::vector<DailyRmse> daily_rmse(std::span<const Timestamp> times, std::span<const double> predicted,
                                  std::span<const double> measured, std::span<const bool> include,
                                  std::chrono::seconds utc_offset);

} // namespace pvcsd
