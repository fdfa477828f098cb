#include "pvcsd/csdetect.hpp"

#include "pvcsd/error.hpp"

#include <algorithm>
#include <cmath>

namespace pvcsd {

Window::Window(std::span<const Sample> samples) : samples_(samples)
{
    if (samples_.size() < 2)
        throw InputError("a window needs at least two samples");
    const auto step = samples_[1].time - samples_[0].time;
    if (step <= std::chrono::seconds::zero())
        throw InputError("window timestamps must be strictly increasing");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const Sample& s = samples_[i];
        require_finite(s.power, "measured power");
        require_finite(s.temperature, "temperature");
        require_finite(s.clearsky_irradiance, "clear-sky irradiance");
        if (s.power < 0.0 || s.clearsky_irradiance < 0.0)
            throw InputError("window samples need non-negative power and clear-sky irradiance");
        if (i > 0 && samples_[i].time - samples_[i - 1].time != step)
            throw InputError("window samples must have a constant step");
        if (s.clearsky_irradiance > samples_[peak_].clearsky_irradiance)
            peak_ = i;
    }
}

std::string to_string(FailReason r)
{
    switch (r) {
    case FailReason::none: return "none";
    case FailReason::out_of_bounds: return "out_of_bounds";
    case FailReason::no_peak_power: return "no_peak_power";
    case FailReason::no_clearsky_irradiance: return "no_clearsky_irradiance";
    case FailReason::no_predicted_power: return "no_predicted_power";
    case FailReason::below_threshold: return "below_threshold";
    }
    return "unknown";
}

namespace {

TestOutcome fail(FailReason reason, std::optional<std::size_t> at = std::nullopt)
{
    TestOutcome o;
    o.reason = reason;
    o.first_violation = at;
    return o;
}

TestOutcome pass()
{
    TestOutcome o;
    o.passed = true;
    return o;
}

// Shared preconditions of tests 1 and 2.
std::optional<TestOutcome> indeterminate(const Window& w)
{
    if (!(w.peak_clearsky() > 0.0))
        return fail(FailReason::no_clearsky_irradiance);
    if (!(w.peak_power() > 0.0))
        return fail(FailReason::no_peak_power, w.peak_index());
    return std::nullopt;
}

} // namespace

std::vector<Interval> gamma1_bounds(const Window& w, const EtaBox& box)
{
    const double i_max = w.peak_clearsky();
    if (!(i_max > 0.0))
        throw InputError("gamma bounds undefined: window has no clear-sky irradiance");
    const Interval a_max = alpha_bounds(i_max, w[w.peak_index()].temperature, box);

    std::vector<Interval> out;
    out.reserve(w.size());
    for (const Sample& s : w.samples()) {
        const Interval a = alpha_bounds(s.clearsky_irradiance, s.temperature, box);
        const double r = s.clearsky_irradiance / i_max;
        out.emplace_back(a.lo / a_max.hi * r, a.hi / a_max.lo * r);
    }
    return out;
}

TestOutcome cs_test1(const Window& w, const EtaBox& box)
{
    if (auto bad = indeterminate(w))
        return *bad;
    const auto bounds = gamma1_bounds(w, box);
    const double p_ref = w.peak_power();
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!bounds[j].contains(w[j].power / p_ref, kRatioSlack))
            return fail(FailReason::out_of_bounds, j);
    }
    return pass();
}

std::vector<Interval> gamma2_bounds(const Window& w, const EtaBox& box)
{
    const double i_max = w.peak_clearsky();
    if (!(i_max > 0.0))
        throw InputError("gamma bounds undefined: window has no clear-sky irradiance");
    const Interval a_max = alpha_bounds(i_max, w[w.peak_index()].temperature, box);

    std::vector<Interval> out;
    out.reserve(w.size() - 1);
    for (std::size_t j = 1; j < w.size(); ++j) {
        const Sample& prev = w[j - 1];
        const Sample& cur = w[j];
        const Interval d = delta_power_bounds(prev.clearsky_irradiance,
                                              cur.clearsky_irradiance - prev.clearsky_irradiance,
                                              cur.temperature, cur.temperature - prev.temperature, box);
        // Interval quotient: a negative lower end divides by the smaller alpha.
        const double lo = d.lo / ((d.lo >= 0.0 ? a_max.hi : a_max.lo) * i_max);
        const double hi = d.hi / ((d.hi >= 0.0 ? a_max.lo : a_max.hi) * i_max);
        out.emplace_back(lo, hi);
    }
    return out;
}

TestOutcome cs_test2(const Window& w, const EtaBox& box)
{
    if (auto bad = indeterminate(w))
        return *bad;
    const auto bounds = gamma2_bounds(w, box);
    const double p_ref = w.peak_power();
    for (std::size_t j = 1; j < w.size(); ++j) {
        const double ratio = (w[j].power - w[j - 1].power) / p_ref;
        if (!bounds[j - 1].contains(ratio, kRatioSlack))
            return fail(FailReason::out_of_bounds, j);
    }
    return pass();
}

TestOutcome cs_test3(const Window& w, const PvusaParams& mu_hat, double eps)
{
    require_finite(eps, "epsilon");
    if (!(eps > 0.0 && eps < 1.0))
        throw InputError("epsilon must lie in (0, 1)");
    if (!(w.peak_clearsky() > 0.0))
        return fail(FailReason::no_clearsky_irradiance);
    const Sample& ref = w[w.peak_index()];
    const double predicted = power(mu_hat, ref.clearsky_irradiance, ref.temperature);
    if (!(predicted > 0.0))
        return fail(FailReason::no_predicted_power, w.peak_index());
    const double ratio = ref.power / predicted;
    TestOutcome o = ratio >= 1.0 - eps ? pass() : fail(FailReason::below_threshold, w.peak_index());
    o.ratio = ratio;
    return o;
}

double epsilon_from_beta0(double nominal_power, double mu1_hat, double beta0, EpsilonClamp clamp)
{
    require_finite(nominal_power, "nominal power");
    require_finite(mu1_hat, "mu1 estimate");
    require_finite(beta0, "beta0");
    if (nominal_power <= 0.0)
        throw InputError("nominal power must be positive");
    if (mu1_hat <= 0.0)
        throw InputError("mu1 estimate must be positive");
    if (!(beta0 > 0.0 && beta0 <= 1.0))
        throw InputError("beta0 must lie in (0, 1]");
    if (!(clamp.min > 0.0 && clamp.min <= clamp.max && clamp.max < 1.0))
        throw InputError("epsilon clamp must satisfy 0 < min <= max < 1");
    const double raw = 1.0 - (nominal_power / 1000.0) * (1.0 / mu1_hat) * beta0;
    return std::clamp(raw, clamp.min, clamp.max);
}

Detection detect_clear_sky(const Window& w, const EtaBox& box, const PvusaParams& mu_hat, double eps)
{
    return {cs_test1(w, box), cs_test2(w, box), cs_test3(w, mu_hat, eps)};
}

} // namespace pvcsd
