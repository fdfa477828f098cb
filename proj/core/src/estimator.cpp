#include "pvcsd/estimator.hpp"

#include "pvcsd/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace pvcsd {

void EstimationConfig::validate() const
{
    if (min_window < 2)
        throw InputError("minimum window length must be at least 2");
    require_finite(beta0, "beta0");
    if (!(beta0 > 0.0 && beta0 <= 1.0))
        throw InputError("beta0 must lie in (0, 1]");
    if (fixed_epsilon && !(*fixed_epsilon > 0.0 && *fixed_epsilon < 1.0))
        throw InputError("fixed epsilon must lie in (0, 1)");
    if (!(epsilon_clamp.min > 0.0 && epsilon_clamp.min <= epsilon_clamp.max && epsilon_clamp.max < 1.0))
        throw InputError("epsilon clamp must satisfy 0 < min <= max < 1");
    box.validate();
    if (!(forgetting > 0.0 && forgetting <= 1.0))
        throw InputError("forgetting factor must lie in (0, 1]");
    if (!(initial_covariance > 0.0) || !std::isfinite(initial_covariance))
        throw InputError("initial covariance scale must be positive");
    if (!(nominal_power > 0.0) || !std::isfinite(nominal_power))
        throw InputError("nominal power must be positive");
}

double EstimationConfig::epsilon(double mu1_hat) const
{
    if (fixed_epsilon)
        return *fixed_epsilon;
    return epsilon_from_beta0(nominal_power, mu1_hat, beta0, epsilon_clamp);
}

PvusaParams initial_params(double nominal_power, const EtaBox& box)
{
    require_finite(nominal_power, "nominal power");
    if (nominal_power <= 0.0)
        throw InputError("nominal power must be positive");
    box.validate();
    const double mu1 = 0.75 * nominal_power / 1000.0;
    return PvusaParams::from_ratios(mu1, box.eta2().center(), box.eta3().center());
}

EstimatorState initial_state(const EstimationConfig& cfg)
{
    cfg.validate();
    return initial_state(cfg, initial_params(cfg.nominal_power, cfg.box));
}

EstimatorState initial_state(const EstimationConfig& cfg, const PvusaParams& mu0)
{
    cfg.validate();
    EstimatorState s;
    s.mu_hat = mu0;
    s.covariance = Eigen::Matrix3d::Identity() * cfg.initial_covariance;
    s.forgetting = cfg.forgetting;
    return s;
}

std::optional<IndexInterval> light_hours(std::span<const Sample> day)
{
    auto lit = [](const Sample& s) { return s.clearsky_irradiance > 0.0; };
    auto first = std::find_if(day.begin(), day.end(), lit);
    if (first == day.end())
        return std::nullopt;
    auto last = std::find_if(day.rbegin(), day.rend(), lit);
    return IndexInterval{static_cast<std::size_t>(first - day.begin()),
                         static_cast<std::size_t>(day.rend() - last) - 1};
}

std::optional<IndexInterval> light_hours(const SiteConfig& site, Date day, std::chrono::seconds step)
{
    const auto profile = clearsky_profile(site, day, step);
    std::optional<IndexInterval> out;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i].irradiance > 0.0) {
            if (!out)
                out = IndexInterval{i, i};
            out->last = i;
        }
    }
    return out;
}

std::string to_string(UpdateStatus s)
{
    switch (s) {
    case UpdateStatus::applied: return "applied";
    case UpdateStatus::singular: return "singular";
    case UpdateStatus::nonpositive_gain: return "nonpositive_gain";
    }
    return "unknown";
}

UpdateResult rls_update(const EstimatorState& state, std::span<const Observation> data)
{
    const Eigen::Vector3d scale(kRegressorScale[0], kRegressorScale[1], kRegressorScale[2]);
    Eigen::Vector3d theta(state.mu_hat.mu1 / scale[0], state.mu_hat.mu2 / scale[1], state.mu_hat.mu3 / scale[2]);
    Eigen::Matrix3d cov = state.covariance;
    const double lambda = state.forgetting;

    for (const Observation& obs : data) {
        const Eigen::Vector3d phi = Eigen::Vector3d(obs.phi[0], obs.phi[1], obs.phi[2]).cwiseProduct(scale);
        const Eigen::Vector3d cov_phi = cov * phi;
        const double denom = lambda + phi.dot(cov_phi);
        if (!(denom > 0.0) || !std::isfinite(denom))
            return {state, UpdateStatus::singular};
        const Eigen::Vector3d gain = cov_phi / denom;
        theta += gain * (obs.target - phi.dot(theta));
        cov = (cov - gain * cov_phi.transpose()) / lambda;
        cov = 0.5 * (cov + cov.transpose());
    }

    Eigen::LLT<Eigen::Matrix3d> chol(cov);
    if (chol.info() != Eigen::Success || !theta.allFinite())
        return {state, UpdateStatus::singular};

    EstimatorState next = state;
    next.mu_hat = {theta[0] * scale[0], theta[1] * scale[1], theta[2] * scale[2]};
    next.covariance = cov;
    if (!(next.mu_hat.mu1 > 0.0))
        return {state, UpdateStatus::nonpositive_gain};
    ++next.updates;
    return {next, UpdateStatus::applied};
}

std::vector<Observation> clearsky_observations(const Window& window)
{
    std::vector<Observation> out;
    out.reserve(window.size());
    for (const Sample& s : window.samples())
        out.push_back({regressor(s.clearsky_irradiance, s.temperature), s.power});
    return out;
}

UpdateResult rls_update(const EstimatorState& state, const Window& window)
{
    const auto obs = clearsky_observations(window);
    return rls_update(state, obs);
}

std::chrono::seconds uniform_step(std::span<const Sample> series)
{
    if (series.size() < 2)
        return std::chrono::seconds{0};
    const auto step = series[1].time - series[0].time;
    if (step <= std::chrono::seconds::zero())
        throw InputError("timestamps must be strictly increasing");
    for (std::size_t i = 2; i < series.size(); ++i) {
        if (series[i].time - series[i - 1].time != step)
            throw InputError("non-uniform sampling step at " + format_timestamp(series[i].time));
    }
    return step;
}

namespace {

std::string failure_note(const Detection& d)
{
    const TestOutcome* tests[] = {&d.test1, &d.test2, &d.test3};
    std::string note;
    for (int i = 0; i < 3; ++i) {
        const TestOutcome& t = *tests[i];
        if (t.passed)
            continue;
        if (!note.empty())
            note += ';';
        note += "test" + std::to_string(i + 1) + ':' + to_string(t.reason);
        if (t.first_violation)
            note += '@' + std::to_string(*t.first_violation);
    }
    return note;
}

} // namespace

DayResult run_day(EstimatorState state, std::span<const Sample> day, const EstimationConfig& cfg, int day_number,
                  std::size_t index_offset)
{
    cfg.validate();
    (void)uniform_step(day);

    DayResult out;
    const std::size_t l_min = cfg.min_window;
    if (day.size() < l_min) {
        if (!day.empty())
            state.step = index_offset + day.size() - 1;
        out.state = state;
        return out;
    }
    const std::size_t k_last = day.size() - 1;

    auto detect = [&](std::size_t first, std::size_t length) {
        const Window w(day.subspan(first, length));
        return detect_clear_sky(w, cfg.box, state.mu_hat, cfg.epsilon(state.mu_hat.mu1));
    };

    std::size_t anchor = 0;
    while (anchor + l_min - 1 <= k_last) {
        std::size_t k = anchor + l_min - 1;
        state.anchor = index_offset + anchor;
        state.window_length = l_min;
        state.step = index_offset + k;

        const Detection seed = detect(anchor, l_min);
        if (!seed.passed()) {
            WindowRecord r;
            r.day = day_number;
            r.anchor = index_offset + anchor;
            r.start = day[anchor].time;
            r.length = l_min;
            r.test1 = seed.test1.passed;
            r.test2 = seed.test2.passed;
            r.test3 = seed.test3.passed;
            r.available_at = index_offset + k;
            r.mu_after = state.mu_hat;
            r.note = failure_note(seed);
            out.rejected.push_back(std::move(r));
            ++anchor;
            continue;
        }

        // Grow the window one sample at a time until a test fails or the day ends.
        std::size_t l = l_min;
        std::string stop;
        for (;;) {
            ++k;
            ++l;
            if (k > k_last) {
                stop = "end_of_day";
                break;
            }
            state.step = index_offset + k;
            state.window_length = l;
            const Detection grown = detect(k + 1 - l, l);
            if (!grown.passed()) {
                stop = "extension " + failure_note(grown);
                break;
            }
        }

        const std::size_t length = l - 1;
        const std::size_t first = k - length;
        const UpdateResult upd = rls_update(state, Window(day.subspan(first, length)));
        const std::size_t at = std::min(k, k_last);

        WindowRecord r;
        r.day = day_number;
        r.anchor = index_offset + first;
        r.start = day[first].time;
        r.length = length;
        r.test1 = r.test2 = r.test3 = true;
        r.accepted = true;
        r.adapted = upd.status == UpdateStatus::applied;
        r.available_at = index_offset + at;
        r.note = stop;
        if (!r.adapted)
            r.note += "; rls " + to_string(upd.status);

        state = upd.state;
        state.step = index_offset + at;
        state.window_length = length;
        r.mu_after = state.mu_hat;
        out.accepted.push_back(std::move(r));

        anchor = k + 1;
    }
    state.step = index_offset + k_last;
    out.state = state;
    return out;
}

const TrajectoryPoint* latest_params(const Trajectory& traj, Timestamp t, bool strict)
{
    auto it = strict ? std::lower_bound(traj.begin(), traj.end(), t,
                                        [](const TrajectoryPoint& p, Timestamp x) { return p.time < x; })
                     : std::upper_bound(traj.begin(), traj.end(), t,
                                        [](Timestamp x, const TrajectoryPoint& p) { return x < p.time; });
    if (it == traj.begin())
        return nullptr;
    return &*std::prev(it);
}

RunResult run(std::span<const Sample> series, const EstimationConfig& cfg)
{
    return run(series, cfg, initial_state(cfg));
}

RunResult run(std::span<const Sample> series, const EstimationConfig& cfg, EstimatorState state)
{
    cfg.validate();
    (void)uniform_step(series);

    RunResult out;
    out.trajectory.reserve(series.size());
    if (series.empty()) {
        out.state = state;
        return out;
    }

    const Date first_day = local_day(series.front().time, cfg.utc_offset);
    std::size_t begin = 0;
    while (begin < series.size()) {
        const Date day = local_day(series[begin].time, cfg.utc_offset);
        std::size_t end = begin;
        while (end < series.size() && local_day(series[end].time, cfg.utc_offset) == day)
            ++end;
        const auto day_span = series.subspan(begin, end - begin);
        const int day_number = static_cast<int>((day - first_day).count()) + 1;

        PvusaParams current = state.mu_hat;
        std::vector<WindowRecord> records;
        if (auto light = light_hours(day_span)) {
            out.light_samples += static_cast<std::size_t>(
                std::count_if(day_span.begin() + static_cast<std::ptrdiff_t>(light->first),
                              day_span.begin() + static_cast<std::ptrdiff_t>(light->last) + 1,
                              [](const Sample& s) { return s.clearsky_irradiance > 0.0; }));
            DayResult dr = run_day(state, day_span.subspan(light->first, light->size()), cfg, day_number,
                                   begin + light->first);
            state = dr.state;
            records.reserve(dr.accepted.size() + dr.rejected.size());
            std::merge(dr.accepted.begin(), dr.accepted.end(), dr.rejected.begin(), dr.rejected.end(),
                       std::back_inserter(records),
                       [](const WindowRecord& a, const WindowRecord& b) { return a.anchor < b.anchor; });
        }
        state.step = end - 1;

        auto next_update = records.begin();
        for (std::size_t i = begin; i < end; ++i) {
            bool updated = false;
            for (; next_update != records.end() && next_update->available_at <= i; ++next_update) {
                if (next_update->adapted) {
                    current = next_update->mu_after;
                    updated = true;
                }
            }
            out.trajectory.push_back({series[i].time, current, updated});
        }
        for (const WindowRecord& r : records) {
            if (r.accepted)
                out.detected_samples += r.length;
        }
        out.log.insert(out.log.end(), records.begin(), records.end());
        begin = end;
    }
    out.state = state;
    return out;
}

} // namespace pvcsd
