#include "pvcsd/clearsky.hpp"

#include "pvcsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pvcsd {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double wrap_degrees(double x)
{
    x = std::fmod(x, 360.0);
    return x < 0.0 ? x + 360.0 : x;
}

const Timestamp kValidFrom = Timestamp{std::chrono::sys_days{std::chrono::year{1950} / 1 / 1}};
const Timestamp kValidTo = Timestamp{std::chrono::sys_days{std::chrono::year{2101} / 1 / 1}};

} // namespace

void SiteConfig::validate() const
{
    for (double v : {latitude, longitude, tilt, azimuth, timezone_offset})
        require_finite(v, "site parameter");
    if (std::abs(latitude) > 90.0)
        throw InputError("latitude must lie in [-90, 90]");
    if (std::abs(longitude) > 180.0)
        throw InputError("longitude must lie in [-180, 180]");
    if (tilt < 0.0 || tilt > 90.0)
        throw InputError("tilt must lie in [0, 90]");
    if (!(azimuth > -180.0 && azimuth <= 180.0))
        throw InputError("azimuth must lie in (-180, 180]");
    (void)utc_offset();
}

std::chrono::seconds SiteConfig::utc_offset() const
{
    return utc_offset_from_hours(timezone_offset);
}

SolarPosition solar_position(const SiteConfig& site, Timestamp t)
{
    if (t < kValidFrom || t >= kValidTo)
        throw InputError("timestamp " + format_timestamp(t) + " outside solar position validity window 1950-2100");

    const double unix_days = static_cast<double>(t.time_since_epoch().count()) / 86400.0;
    const double n = unix_days + 2440587.5 - 2451545.0; // days since J2000.0
    const double hour_utc = (unix_days - std::floor(unix_days)) * 24.0;

    // Ecliptic coordinates.
    const double mean_longitude = wrap_degrees(280.460 + 0.9856474 * n);
    const double mean_anomaly = wrap_degrees(357.528 + 0.9856003 * n) * kDeg;
    const double ecliptic_longitude =
        (mean_longitude + 1.915 * std::sin(mean_anomaly) + 0.020 * std::sin(2.0 * mean_anomaly)) * kDeg;
    const double obliquity = (23.439 - 0.0000004 * n) * kDeg;

    // Equatorial coordinates.
    const double right_ascension =
        std::atan2(std::cos(obliquity) * std::sin(ecliptic_longitude), std::cos(ecliptic_longitude));
    const double declination = std::asin(std::sin(obliquity) * std::sin(ecliptic_longitude));

    // Local hour angle.
    const double gmst_hours = std::fmod(6.697375 + 0.0657098242 * n + hour_utc, 24.0);
    const double lmst_deg = wrap_degrees(gmst_hours * 15.0 + site.longitude);
    double hour_angle = wrap_degrees(lmst_deg - right_ascension / kDeg);
    if (hour_angle > 180.0)
        hour_angle -= 360.0;
    hour_angle *= kDeg;

    const double lat = site.latitude * kDeg;
    const double sin_alt = std::sin(declination) * std::sin(lat)
                         + std::cos(declination) * std::cos(lat) * std::cos(hour_angle);
    SolarPosition pos;
    pos.altitude = std::asin(std::clamp(sin_alt, -1.0, 1.0));
    pos.azimuth = std::atan2(std::sin(hour_angle),
                             std::cos(hour_angle) * std::sin(lat) - std::tan(declination) * std::cos(lat));
    return pos;
}

double normal_clearsky_irradiance(double altitude)
{
    require_finite(altitude, "solar altitude");
    // The zenith itself is included so the curve is continuous at h = pi/2.
    if (!(altitude > 0.0 && altitude <= std::numbers::pi / 2.0))
        return 0.0;
    return kExtraterrestrialIrradiance * std::pow(0.7, std::pow(1.0 / std::sin(altitude), 0.678));
}

double tilted_irradiance(double normal_irradiance, const SolarPosition& sun, const SiteConfig& site)
{
    require_finite(normal_irradiance, "normal irradiance");
    if (normal_irradiance < 0.0)
        throw InputError("normal irradiance must be non-negative");
    const double psi = site.tilt * kDeg;
    const double zeta = site.azimuth * kDeg;
    const double factor = std::sin(psi) * std::cos(sun.altitude) * std::cos(zeta - sun.azimuth)
                        + std::cos(psi) * std::sin(sun.altitude);
    return std::max(0.0, factor) * normal_irradiance;
}

double clearsky_irradiance(const SiteConfig& site, Timestamp t)
{
    const SolarPosition sun = solar_position(site, t);
    return tilted_irradiance(normal_clearsky_irradiance(sun.altitude), sun, site);
}

std::vector<ProfilePoint> clearsky_profile(const SiteConfig& site, Date day, std::chrono::seconds step)
{
    using namespace std::chrono;
    if (step <= seconds::zero() || days{1} % step != seconds::zero())
        throw InputError("profile step must be positive and divide 24 h");
    site.validate();
    const Timestamp start = local_midnight(day, site.utc_offset());
    const auto count = static_cast<std::size_t>(days{1} / step);
    std::vector<ProfilePoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Timestamp t = start + step * static_cast<long long>(i);
        out.push_back({t, clearsky_irradiance(site, t)});
    }
    return out;
}

Orientation default_orientation(double latitude)
{
    require_finite(latitude, "latitude");
    if (std::abs(latitude) > 90.0)
        throw InputError("latitude must lie in [-90, 90]");
    Orientation o;
    o.tilt = std::min(std::abs(latitude), kMaxDefaultTilt);
    o.azimuth = latitude < 0.0 ? 180.0 : 0.0;
    return o;
}

} // namespace pvcsd
