#pragma once

#include <array>

namespace pvcsd {

// Closed interval [lo, hi]. Carrier for every bound pair computed by the
// library (alpha range, power increment range, normalized ratio range).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr Interval(double l, double h) : lo(l), hi(h) {}
    static constexpr Interval point(double v) { return {v, v}; }

    constexpr bool contains(double x, double slack = 0.0) const
    {
        return x >= lo - slack && x <= hi + slack;
    }
    constexpr double width() const { return hi - lo; }
    constexpr double center() const { return 0.5 * (lo + hi); }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

Interval operator+(Interval a, Interval b);
Interval operator+(double a, Interval b);
Interval operator*(double s, Interval a);
Interval operator*(Interval a, Interval b);

// Parameters of the plant model P = mu1*I + mu2*I^2 + mu3*I*T.
// Units: kW per W/m^2, kW per (W/m^2)^2, kW per (W/m^2 * degC).
struct PvusaParams {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;

    // Ratios mu2/mu1 and mu3/mu1. Throw DomainError when mu1 == 0.
    double eta2() const;
    double eta3() const;

    constexpr std::array<double, 3> as_array() const { return {mu1, mu2, mu3}; }
    static constexpr PvusaParams from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

    // Builds mu from a gain and the two ratios.
    static constexpr PvusaParams from_ratios(double mu1, double eta2, double eta3)
    {
        return {mu1, eta2 * mu1, eta3 * mu1};
    }

    friend constexpr bool operator==(const PvusaParams&, const PvusaParams&) = default;
};

// Technology-wide admissible rectangle for (eta2, eta3).
struct EtaBox {
    double eta2_lo = -2.5e-4;
    double eta2_hi = -1.9e-5;
    double eta3_lo = -4.8e-3;
    double eta3_hi = -1.7e-3;

    constexpr Interval eta2() const { return {eta2_lo, eta2_hi}; }
    constexpr Interval eta3() const { return {eta3_lo, eta3_hi}; }
    constexpr bool contains(double e2, double e3) const
    {
        return e2 >= eta2_lo && e2 <= eta2_hi && e3 >= eta3_lo && e3 <= eta3_hi;
    }
    // Throws InputError unless lo <= hi < 0 on both axes.
    void validate() const;

    friend constexpr bool operator==(const EtaBox&, const EtaBox&) = default;
};

using Regressor = std::array<double, 3>;

// [I, I^2, I*T].
Regressor regressor(double irradiance, double temperature);

double power(const PvusaParams& p, double irradiance, double temperature);

// 1 + eta2*I + eta3*T, so that power == mu1 * alpha * I.
double alpha(const PvusaParams& p, double irradiance, double temperature);

// Tight range of alpha over the eta box.
Interval alpha_bounds(double irradiance, double temperature, const EtaBox& box);

// Tight range of eta2*dI + eta3*dT over the eta box.
Interval delta_alpha_bounds(double delta_irradiance, double delta_temperature, const EtaBox& box);

// Bounds [d_lo, d_hi] with mu1*d_lo <= P(j) - P(j-1) <= mu1*d_hi for any plant
// whose ratios lie in the box. The increment decomposes as
//   dP/mu1 = I(j-1) * dalpha(j) + dI(j) * alpha(I(j), T(j)),
// and each factor is bounded independently. temperature is T(j).
Interval delta_power_bounds(double previous_irradiance, double delta_irradiance, double temperature,
                            double delta_temperature, const EtaBox& box);

} // namespace pvcsd
