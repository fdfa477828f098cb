#include "pvcsd/pvusa.hpp"

#include "pvcsd/error.hpp"

#include <algorithm>

namespace pvcsd {

Interval operator+(Interval a, Interval b)
{
    return {a.lo + b.lo, a.hi + b.hi};
}

Interval operator+(double a, Interval b)
{
    return {a + b.lo, a + b.hi};
}

Interval operator*(double s, Interval a)
{
    const double x = s * a.lo;
    const double y = s * a.hi;
    return {std::min(x, y), std::max(x, y)};
}

Interval operator*(Interval a, Interval b)
{
    const double p1 = a.lo * b.lo;
    const double p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo;
    const double p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

double PvusaParams::eta2() const
{
    if (mu1 == 0.0)
        throw DomainError("eta2 undefined: mu1 is zero");
    return mu2 / mu1;
}

double PvusaParams::eta3() const
{
    if (mu1 == 0.0)
        throw DomainError("eta3 undefined: mu1 is zero");
    return mu3 / mu1;
}

void EtaBox::validate() const
{
    for (double v : {eta2_lo, eta2_hi, eta3_lo, eta3_hi})
        require_finite(v, "eta box bound");
    if (!(eta2_lo <= eta2_hi && eta2_hi < 0.0))
        throw InputError("eta2 range must satisfy lo <= hi < 0");
    if (!(eta3_lo <= eta3_hi && eta3_hi < 0.0))
        throw InputError("eta3 range must satisfy lo <= hi < 0");
}

namespace {

void check_inputs(double irradiance, double temperature)
{
    require_finite(irradiance, "irradiance");
    require_finite(temperature, "temperature");
    if (irradiance < 0.0)
        throw InputError("irradiance must be non-negative");
}

} // namespace

Regressor regressor(double irradiance, double temperature)
{
    check_inputs(irradiance, temperature);
    return {irradiance, irradiance * irradiance, irradiance * temperature};
}

double power(const PvusaParams& p, double irradiance, double temperature)
{
    const Regressor phi = regressor(irradiance, temperature);
    return phi[0] * p.mu1 + phi[1] * p.mu2 + phi[2] * p.mu3;
}

double alpha(const PvusaParams& p, double irradiance, double temperature)
{
    check_inputs(irradiance, temperature);
    return 1.0 + p.eta2() * irradiance + p.eta3() * temperature;
}

Interval alpha_bounds(double irradiance, double temperature, const EtaBox& box)
{
    check_inputs(irradiance, temperature);
    // Each eta enters once, so naive interval evaluation is exact.
    return 1.0 + (irradiance * box.eta2() + temperature * box.eta3());
}

Interval delta_alpha_bounds(double delta_irradiance, double delta_temperature, const EtaBox& box)
{
    require_finite(delta_irradiance, "irradiance increment");
    require_finite(delta_temperature, "temperature increment");
    return delta_irradiance * box.eta2() + delta_temperature * box.eta3();
}

Interval delta_power_bounds(double previous_irradiance, double delta_irradiance, double temperature,
                            double delta_temperature, const EtaBox& box)
{
    require_finite(previous_irradiance, "previous irradiance");
    require_finite(delta_irradiance, "irradiance increment");
    if (previous_irradiance < 0.0)
        throw InputError("previous irradiance must be non-negative");
    const double current = previous_irradiance + delta_irradiance;
    if (current < 0.0)
        throw InputError("irradiance after increment must be non-negative");

    const Interval d_alpha = delta_alpha_bounds(delta_irradiance, delta_temperature, box);
    const Interval a = alpha_bounds(current, temperature, box);
    return previous_irradiance * d_alpha + delta_irradiance * a;
}

} // namespace pvcsd
