#pragma once

#include "pvcsd/pvusa.hpp"
#include "pvcsd/time.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pvcsd {

// One data point of the limited-information series.
struct Sample {
    Timestamp time;
    double power = 0.0;                // measured P^m, kW
    double temperature = 0.0;          // forecast or measured, degC
    double clearsky_irradiance = 0.0;  // theoretical I^cs on the panel plane, W/m^2

    friend bool operator==(const Sample&, const Sample&) = default;
};

// Non-owning view over a contiguous, uniformly sampled run of samples.
//
// The reference index is the first sample attaining the maximum clear-sky
// irradiance. Tests normalize by the measured power at that index, not by the
// measured maximum.
class Window {
public:
    // Throws InputError when fewer than two samples are given, when timestamps
    // are not strictly increasing with a constant step, or when a sample holds a
    // negative or non-finite value.
    explicit Window(std::span<const Sample> samples);

    std::span<const Sample> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }

    std::size_t peak_index() const { return peak_; }
    double peak_clearsky() const { return samples_[peak_].clearsky_irradiance; }
    double peak_power() const { return samples_[peak_].power; }

private:
    std::span<const Sample> samples_;
    std::size_t peak_ = 0;
};

enum class FailReason {
    none,
    out_of_bounds,          // a ratio left its admissible interval
    no_peak_power,          // P^m at the reference index is not positive
    no_clearsky_irradiance, // the window does not intersect light hours
    no_predicted_power,     // current model predicts non-positive peak power
    below_threshold,        // test 3 ratio under 1 - eps
};

std::string to_string(FailReason r);

struct TestOutcome {
    bool passed = false;
    FailReason reason = FailReason::none;
    // Window-relative index of the first violating sample, when applicable.
    std::optional<std::size_t> first_violation;
    // Peak ratio P^m(j_max) / P^cs_max; only set by cs_test3.
    std::optional<double> ratio;
};

// Absolute slack on normalized-ratio comparisons, absorbing rounding only.
inline constexpr double kRatioSlack = 1e-12;

// Per-sample bounds on P^cs(j) / P^cs_max. Throws InputError if the window
// has zero peak clear-sky irradiance.
std::vector<Interval> gamma1_bounds(const Window& w, const EtaBox& box);

// Shape test on P^m(j) / P^m(j_max).
TestOutcome cs_test1(const Window& w, const EtaBox& box);

// Bounds on (P^cs(j) - P^cs(j-1)) / P^cs_max for j = 1..size-1. Element i
// refers to window sample i + 1.
std::vector<Interval> gamma2_bounds(const Window& w, const EtaBox& box);

// Increment test on (P^m(j) - P^m(j-1)) / P^m(j_max).
TestOutcome cs_test2(const Window& w, const EtaBox& box);

// Peak-ratio test against the current model: passes iff
// P^m(j_max) / P_hat^cs_max >= 1 - eps.
TestOutcome cs_test3(const Window& w, const PvusaParams& mu_hat, double eps);

struct EpsilonClamp {
    double min = 0.01;
    double max = 0.95;
};

// eps = 1 - (P_nom/1000) * beta0 / mu1_hat, clamped to [clamp.min, clamp.max].
double epsilon_from_beta0(double nominal_power, double mu1_hat, double beta0, EpsilonClamp clamp = {});

struct Detection {
    TestOutcome test1;
    TestOutcome test2;
    TestOutcome test3;

    bool passed() const { return test1.passed && test2.passed && test3.passed; }
};

// Runs all three tests. Every test is always evaluated so the log carries
// the full verdict triple.
Detection detect_clear_sky(const Window& w, const EtaBox& box, const PvusaParams& mu_hat, double eps);

} // namespace pvcsd
