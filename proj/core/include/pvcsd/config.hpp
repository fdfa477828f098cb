#pragma once

#include "pvcsd/clearsky.hpp"
#include "pvcsd/datagen.hpp"
#include "pvcsd/estimator.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pvcsd {

// Environment variable naming a default configuration file.
inline constexpr const char* kConfigEnvVar = "PVCSD_CONFIG";

// Run configuration assembled from defaults and an INI file. See README for
// the key list; unknown sections or keys are rejected.
struct AppConfig {
    SiteConfig site{40.35, 18.17, 10.6, -10.0, 1.0};
    double nominal_power = 960.0; // kW
    PvusaParams true_params{1.0, -1.2e-4, -3.5e-3};

    // Estimator section; nominal_power and utc_offset are filled from the above.
    EstimationConfig estimator;

    ScenarioConfig scenario;
    std::uint64_t seed = 1;
    double pod = 0.0;
    double pod_beta_min = 0.5;
    double pod_beta_max = 0.9;

    ForecastNoise forecast_noise;

    int start_day = 28; // first evaluated day, 1-based

    EstimationConfig estimation() const;
    ScenarioConfig scenario_config() const;
    void validate() const;
};

// "C", "U:<beta>", "S:<intensity>" tokens separated by commas or spaces.
std::vector<DayPlan> parse_schedule(std::string_view text);
std::string format_schedule(const std::vector<DayPlan>& plans);

// Applies the INI text on top of `base`. Throws InputError on syntax errors,
// unknown keys and invalid values.
AppConfig parse_config(std::string_view text, AppConfig base = {}, const std::string& source = "<config>");
AppConfig load_config(const std::filesystem::path& path, AppConfig base = {});

} // namespace pvcsd
