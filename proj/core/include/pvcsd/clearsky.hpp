#pragma once

#include "pvcsd/time.hpp"

#include <chrono>
#include <vector>

namespace pvcsd {

// Plant location and panel orientation. Angles in degrees.
//
// Azimuths (panel and sun) are measured from due south, positive toward west,
// so a south-facing panel has azimuth 0 and a north-facing one 180.
struct SiteConfig {
    double latitude = 0.0;
    double longitude = 0.0;   // positive east
    double tilt = 0.0;        // 0 = horizontal
    double azimuth = 0.0;     // (-180, 180]
    double timezone_offset = 0.0; // hours from UTC; only used for day boundaries

    void validate() const;
    std::chrono::seconds utc_offset() const;
};

// Sun position in radians. Azimuth uses the same south-referenced convention as SiteConfig.
struct SolarPosition {
    double altitude = 0.0;
    double azimuth = 0.0;
};

// Low-precision almanac algorithm (about 0.01 deg in declination); no refraction.
// Valid for 1950 through 2100; throws InputError outside that window.
SolarPosition solar_position(const SiteConfig& site, Timestamp t);

inline constexpr double kExtraterrestrialIrradiance = 1353.0; // W/m^2

// Clear-sky normal irradiance from solar altitude (rad):
// A * 0.7^((1/sin h)^0.678) for 0 < h <= pi/2, zero otherwise.
double normal_clearsky_irradiance(double altitude);

// Projection of the normal irradiance on the panel plane, clamped at zero when
// the sun is behind the panel.
double tilted_irradiance(double normal_irradiance, const SolarPosition& sun, const SiteConfig& site);

// solar_position -> normal_clearsky_irradiance -> tilted_irradiance.
double clearsky_irradiance(const SiteConfig& site, Timestamp t);

struct ProfilePoint {
    Timestamp time;
    double irradiance = 0.0;
};

// Clear-sky irradiance sampled every step over local day `day`, starting at
// local midnight. step must divide 24 h.
std::vector<ProfilePoint> clearsky_profile(const SiteConfig& site, Date day, std::chrono::seconds step);

struct Orientation {
    double azimuth = 0.0;
    double tilt = 0.0;
};

inline constexpr double kMaxDefaultTilt = 35.0;

// Equator-facing panel with tilt = min(|latitude|, 35 deg). Used when the real
// orientation is unknown.
Orientation default_orientation(double latitude);

} // namespace pvcsd
