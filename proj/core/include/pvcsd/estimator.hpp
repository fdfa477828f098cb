#pragma once

#include "pvcsd/clearsky.hpp"
#include "pvcsd/csdetect.hpp"
#include "pvcsd/pvusa.hpp"
#include "pvcsd/time.hpp"

#include <Eigen/Core>

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pvcsd {

// The RLS recursion runs on the normalized regressor
//   phi_n = [I / 1e3, I^2 / 1e6, I*T / 1e4]
// so that all three components are O(1) for realistic inputs. The
// covariance and its initial scale are expressed in those coordinates.
inline constexpr std::array<double, 3> kRegressorScale{1e-3, 1e-6, 1e-4};

struct Observation {
    Regressor phi;
    double target = 0.0;
};

struct EstimatorState {
    PvusaParams mu_hat;
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity();
    double forgetting = 1.0;
    std::size_t step = 0;          // k: last processed sample (series index)
    std::size_t anchor = 0;        // k': start of the current window
    std::size_t window_length = 0; // l
    std::size_t updates = 0;       // applied RLS adaptations
};

struct EstimationConfig {
    std::size_t min_window = 3;
    double beta0 = 0.9;
    // Static tolerance for test 3; overrides the beta0 rule when set.
    std::optional<double> fixed_epsilon;
    EpsilonClamp epsilon_clamp;
    EtaBox box;
    double forgetting = 0.995;
    double initial_covariance = 1e3;
    double nominal_power = 0.0; // kW
    // Local day boundaries for resetting the window search.
    std::chrono::seconds utc_offset{0};

    void validate() const;
    // Test-3 tolerance for the given current gain estimate.
    double epsilon(double mu1_hat) const;
};

// mu1 = 0.75 * P_nom / 1000, eta ratios at the centre of the box.
PvusaParams initial_params(double nominal_power, const EtaBox& box);

EstimatorState initial_state(const EstimationConfig& cfg);
EstimatorState initial_state(const EstimationConfig& cfg, const PvusaParams& mu0);

// Inclusive index range.
struct IndexInterval {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t size() const { return last - first + 1; }
    friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

// First and last index of the day's clear-sky profile with positive
// irradiance; nullopt during polar night.
std::optional<IndexInterval> light_hours(const SiteConfig& site, Date day, std::chrono::seconds step);
std::optional<IndexInterval> light_hours(std::span<const Sample> day);

enum class UpdateStatus {
    applied,
    singular,          // covariance lost positive definiteness
    nonpositive_gain,  // the update would drive mu1 <= 0
};

std::string to_string(UpdateStatus s);

struct UpdateResult {
    EstimatorState state;
    UpdateStatus status = UpdateStatus::applied;
};

// Sample-by-sample exponentially weighted RLS. On failure the input state is
// returned unchanged together with the failure status.
UpdateResult rls_update(const EstimatorState& state, std::span<const Observation> data);

// Same, with regressors built from the window's clear-sky irradiance and
// temperature and targets from its measured power.
UpdateResult rls_update(const EstimatorState& state, const Window& window);

std::vector<Observation> clearsky_observations(const Window& window);

// One entry per window decision taken by the estimator.
struct WindowRecord {
    int day = 0;               // 1-based day number within the run
    std::size_t anchor = 0;    // series index of the first sample
    Timestamp start;
    std::size_t length = 0;
    bool test1 = false;
    bool test2 = false;
    bool test3 = false;
    bool accepted = false;     // classified clear-sky
    bool adapted = false;      // RLS step applied
    std::size_t available_at = 0; // series index from which mu_after is in effect
    PvusaParams mu_after;
    std::string note;

    friend bool operator==(const WindowRecord&, const WindowRecord&) = default;
};

struct DayResult {
    EstimatorState state;
    std::vector<WindowRecord> accepted;
    std::vector<WindowRecord> rejected;
};

// Dynamic-window harvesting over the light hours of a single day.
// day_samples must be uniformly sampled; index_offset is the series index of
// day_samples[0]. Throws InputError on a non-uniform step.
DayResult run_day(EstimatorState state, std::span<const Sample> day_samples, const EstimationConfig& cfg,
                  int day_number = 1, std::size_t index_offset = 0);

struct TrajectoryPoint {
    Timestamp time;
    PvusaParams params;
    bool updated = false;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

using Trajectory = std::vector<TrajectoryPoint>;

// Latest point with time <= t (time < t when strict); nullptr if none.
const TrajectoryPoint* latest_params(const Trajectory& traj, Timestamp t, bool strict = false);

struct RunResult {
    Trajectory trajectory;        // one point per input sample
    std::vector<WindowRecord> log; // chronological
    EstimatorState state;
    std::size_t light_samples = 0;
    std::size_t detected_samples = 0; // samples inside accepted windows

    double detected_fraction() const
    {
        return light_samples == 0 ? 0.0 : static_cast<double>(detected_samples) / static_cast<double>(light_samples);
    }
};

// Runs the estimator over a multi-day uniformly sampled series. Each local
// day restarts the window search on its light hours; the estimate carries over.
RunResult run(std::span<const Sample> series, const EstimationConfig& cfg);
RunResult run(std::span<const Sample> series, const EstimationConfig& cfg, EstimatorState initial);

// Throws InputError unless timestamps are strictly increasing with a constant step.
std::chrono::seconds uniform_step(std::span<const Sample> series);

} // namespace pvcsd
