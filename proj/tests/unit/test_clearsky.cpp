#include <doctest.h>

#include "oracles.hpp"

#include <pvcsd/clearsky.hpp>
#include <pvcsd/error.hpp>

#include <cmath>
#include <numbers>

using namespace pvcsd;
using namespace std::chrono;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Timestamp utc(int y, unsigned m, unsigned d, int h, int min = 0)
{
    return sys_days{year{y} / month{m} / day{d}} + hours{h} + minutes{min};
}

} // namespace

TEST_CASE("normal clear-sky irradiance")
{
    CHECK(normal_clearsky_irradiance(std::numbers::pi / 2) == doctest::Approx(947.1).epsilon(0.1 / 947.1));
    CHECK(std::abs(normal_clearsky_irradiance(std::numbers::pi / 2) - 947.1) <= 0.1);
    CHECK(normal_clearsky_irradiance(0.0) == 0.0);
    CHECK(normal_clearsky_irradiance(-0.3) == 0.0);
    CHECK(normal_clearsky_irradiance(std::numbers::pi / 6) == doctest::Approx(oracle::heliodon(std::numbers::pi / 6)));
    for (double h = 0.01; h < std::numbers::pi / 2; h += 0.05) {
        CAPTURE(h);
        CHECK(normal_clearsky_irradiance(h) == doctest::Approx(oracle::heliodon(h)).epsilon(1e-13));
        CHECK(normal_clearsky_irradiance(h) < normal_clearsky_irradiance(h + 0.01));
    }
}

TEST_CASE("tilted projection")
{
    SiteConfig site{40.0, 0.0, 30.0, 0.0, 0.0};
    // Sun due south at 40 deg with a 30 deg south-facing panel: cos(20 deg) = sin(70 deg).
    const SolarPosition sun{40.0 * kDeg, 0.0};
    CHECK(tilted_irradiance(1.0, sun, site) == doctest::Approx(0.9396926).epsilon(1e-7));
    // Horizontal panel: projection is sin h.
    site.tilt = 0.0;
    CHECK(tilted_irradiance(1.0, sun, site) == doctest::Approx(std::sin(40.0 * kDeg)));
    // Sun behind a steep panel is clamped at zero.
    site.tilt = 90.0;
    CHECK(tilted_irradiance(1.0, SolarPosition{10.0 * kDeg, std::numbers::pi}, site) == 0.0);
}

TEST_CASE("solar position against an independent ephemeris")
{
    struct Case {
        double lat, lon;
        Timestamp t;
        double elevation, azimuth_north;
    };
    // Reference values from the NREL SPA implementation.
    const Case cases[] = {
        {40.42, -3.70, utc(2012, 6, 21, 12), 72.655691, 167.070980},
        {40.42, -3.70, utc(2012, 3, 20, 12), 49.376729, 171.482904},
        {40.42, -3.70, utc(2012, 12, 21, 9, 30), 15.732464, 141.509034},
        {0.0, 0.0, utc(2012, 6, 21, 12), 66.559411, 1.081336},
        {0.0, 0.0, utc(2012, 3, 20, 12), 88.163174, 86.518716},
        {0.0, 0.0, utc(2012, 12, 21, 9, 30), 47.064918, 125.725214},
        {40.35, 18.17, utc(2012, 6, 21, 12), 67.462219, 226.707181},
        {40.35, 18.17, utc(2012, 3, 20, 12), 47.102545, 204.408630},
        {40.35, 18.17, utc(2012, 12, 21, 9, 30), 23.829796, 161.047602},
    };
    for (const Case& c : cases) {
        CAPTURE(c.lat);
        CAPTURE(c.lon);
        CAPTURE(format_timestamp(c.t));
        const SolarPosition sp = solar_position(SiteConfig{c.lat, c.lon, 0.0, 0.0, 0.0}, c.t);
        CHECK(std::abs(sp.altitude / kDeg - c.elevation) < 0.5);
        if (c.elevation < 85.0) {
            double diff = sp.azimuth / kDeg - (c.azimuth_north - 180.0);
            diff = std::remainder(diff, 360.0);
            CHECK(std::abs(diff) < 0.5);
        }
    }
}

TEST_CASE("equator at equinox: sun passes near the zenith")
{
    const SiteConfig site{0.0, 0.0, 0.0, 0.0, 0.0};
    double best = 0.0;
    for (int m = 11 * 60; m <= 13 * 60; ++m)
        best = std::max(best, solar_position(site, utc(2012, 3, 20, 0) + minutes{m}).altitude);
    CHECK(best / kDeg > 89.5);
}

TEST_CASE("solar position validity window and site validation")
{
    const SiteConfig site{40.0, 10.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(solar_position(site, utc(1949, 12, 31, 12)), InputError);
    CHECK_THROWS_AS(solar_position(site, utc(2101, 1, 1, 12)), InputError);
    CHECK_NOTHROW(solar_position(site, utc(2100, 12, 31, 12)));
    CHECK_THROWS_AS((SiteConfig{91.0, 0.0, 0.0, 0.0, 0.0}.validate()), InputError);
    CHECK_THROWS_AS((SiteConfig{0.0, 181.0, 0.0, 0.0, 0.0}.validate()), InputError);
    CHECK_THROWS_AS((SiteConfig{0.0, 0.0, 95.0, 0.0, 0.0}.validate()), InputError);
}

TEST_CASE("clear-sky profile")
{
    const SiteConfig site = oracle::test_site();
    const auto profile = clearsky_profile(site, sys_days{year{2012} / 6 / 21}, hours{1});
    REQUIRE(profile.size() == 24);
    CHECK(profile.front().time == local_midnight(sys_days{year{2012} / 6 / 21}, site.utc_offset()));
    CHECK(profile[0].irradiance == 0.0);
    CHECK(profile[23].irradiance == 0.0);
    CHECK(profile[12].irradiance > 800.0);
    for (const auto& p : profile)
        CHECK(p.irradiance >= 0.0);
    CHECK(clearsky_profile(site, sys_days{year{2012} / 6 / 21}, minutes{15}).size() == 96);
    CHECK_THROWS_AS(clearsky_profile(site, sys_days{year{2012} / 6 / 21}, minutes{7}), InputError);

    // Polar night: no light at all.
    const SiteConfig arctic{78.0, 15.0, 0.0, 0.0, 1.0};
    for (const auto& p : clearsky_profile(arctic, sys_days{year{2012} / 12 / 21}, hours{1}))
        CHECK(p.irradiance == 0.0);
}

TEST_CASE("default orientation faces the equator")
{
    CHECK(default_orientation(40.35).tilt == doctest::Approx(35.0));
    CHECK(default_orientation(40.35).azimuth == 0.0);
    CHECK(default_orientation(20.0).tilt == doctest::Approx(20.0));
    CHECK(default_orientation(-33.9).azimuth == 180.0);
    CHECK(default_orientation(-33.9).tilt == doctest::Approx(33.9));
}
