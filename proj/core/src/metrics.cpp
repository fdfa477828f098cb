#include "pvcsd/metrics.hpp"

#include "pvcsd/error.hpp"

#include <cmath>
#include <numeric>

namespace pvcsd {

MetricsReport evaluate(std::span<const double> predicted, std::span<const double> measured, double nominal_power,
                       std::span<const std::size_t> mask)
{
    if (predicted.size() != measured.size())
        throw InputError("predicted and measured series differ in length");
    if (mask.empty())
        throw InputError("evaluation mask is empty");
    if (!(nominal_power > 0.0) || !std::isfinite(nominal_power))
        throw InputError("nominal power must be positive");

    const auto k = static_cast<double>(mask.size());
    double sum_sq = 0.0;
    double sum_err = 0.0;
    double sum_abs_np = 0.0;
    double sum_ape = 0.0;
    std::size_t n_ape = 0;
    double sum_meas = 0.0;
    for (std::size_t j : mask) {
        if (j >= measured.size())
            throw InputError("evaluation mask index out of range");
        require_finite(predicted[j], "predicted power");
        require_finite(measured[j], "measured power");
        const double err = measured[j] - predicted[j];
        sum_sq += err * err;
        sum_err += err;
        sum_abs_np += std::abs(err / nominal_power);
        if (measured[j] != 0.0) {
            sum_ape += std::abs(err / measured[j]);
            ++n_ape;
        }
        sum_meas += measured[j];
    }
    const double mean = sum_meas / k;
    double sum_dev = 0.0;
    for (std::size_t j : mask)
        sum_dev += (measured[j] - mean) * (measured[j] - mean);

    MetricsReport r;
    r.n_samples = mask.size();
    r.rmse = std::sqrt(sum_sq / k);
    r.mbe = sum_err / k;
    if (n_ape > 0)
        r.mape = sum_ape / static_cast<double>(n_ape) * 100.0;
    if (sum_dev > 0.0) {
        const double nrmse = std::sqrt(sum_sq / sum_dev);
        r.nrmse = nrmse;
        r.r2 = 1.0 - nrmse * nrmse;
    }
    r.rmse_np = r.rmse / nominal_power;
    r.mape_np = sum_abs_np / k * 100.0;
    return r;
}

MetricsReport evaluate(std::span<const double> predicted, std::span<const double> measured, double nominal_power)
{
    std::vector<std::size_t> all(measured.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return evaluate(predicted, measured, nominal_power, all);
}

std::vector<DailyRmse> daily_rmse(std::span<const Timestamp> times, std::span<const double> predicted,
                                  std::span<const double> measured, std::span<const bool> include,
                                  std::chrono::seconds utc_offset)
{
    const std::size_t n = times.size();
    if (predicted.size() != n || measured.size() != n || include.size() != n)
        throw InputError("daily RMSE inputs differ in length");

    std::vector<DailyRmse> out;
    std::size_t i = 0;
    while (i < n) {
        const Date day = local_day(times[i], utc_offset);
        double sum_sq = 0.0;
        double sum = 0.0;
        std::vector<double> values;
        for (; i < n && local_day(times[i], utc_offset) == day; ++i) {
            if (!include[i])
                continue;
            const double err = measured[i] - predicted[i];
            sum_sq += err * err;
            sum += measured[i];
            values.push_back(measured[i]);
        }
        if (values.empty())
            continue;
        const double cnt = static_cast<double>(values.size());
        const double mean = sum / cnt;
        double dev = 0.0;
        for (double v : values)
            dev += (v - mean) * (v - mean);
        out.push_back({day, std::sqrt(sum_sq / cnt), std::sqrt(dev / cnt), values.size()});
    }
    return out;
}

} // namespace pvcsd
