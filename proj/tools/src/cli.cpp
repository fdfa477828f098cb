#include "pvcsd/cli.hpp"

#include "pvcsd/config.hpp"
#include "pvcsd/datagen.hpp"
#include "pvcsd/error.hpp"
#include "pvcsd/estimator.hpp"
#include "pvcsd/forecast.hpp"
#include "pvcsd/io.hpp"
#include "pvcsd/metrics.hpp"
#include "pvcsd/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace pvcsd {

namespace fs = std::filesystem;

namespace {

// Options shared by every subcommand. Anything set here overrides the
// configuration file, which overrides the built-in defaults.
struct CommonOptions {
    std::string config;
    std::optional<double> latitude;
    std::optional<double> longitude;
    std::optional<double> tilt;
    std::optional<double> azimuth;
    std::optional<double> timezone;
    std::optional<double> nominal_power;
    std::optional<double> beta0;
    std::optional<std::size_t> min_window;
    std::optional<double> forgetting;
    std::optional<double> epsilon;
    std::optional<int> start_day;

    void attach(CLI::App& app)
    {
        app.add_option("--config", config, "INI configuration file (default: $" + std::string(kConfigEnvVar) + ")");
        app.add_option("--latitude", latitude, "Site latitude [deg]");
        app.add_option("--longitude", longitude, "Site longitude [deg, east positive]");
        app.add_option("--tilt", tilt, "Panel tilt [deg]");
        app.add_option("--azimuth", azimuth, "Panel azimuth [deg from south, west positive]");
        app.add_option("--timezone", timezone, "Local time offset from UTC [h]");
        app.add_option("--nominal-power", nominal_power, "Plant nominal power [kW]");
    }

    void attach_estimator(CLI::App& app)
    {
        app.add_option("--beta0", beta0, "Cloud cover factor threshold for test 3");
        app.add_option("--min-window", min_window, "Minimum window length l_min");
        app.add_option("--forgetting", forgetting, "RLS forgetting factor");
        app.add_option("--epsilon", epsilon, "Static test-3 tolerance (overrides beta0 rule)");
    }

    void attach_start_day(CLI::App& app)
    {
        app.add_option("--start-day", start_day, "First evaluated day (1-based)");
    }

    AppConfig resolve() const
    {
        AppConfig cfg;
        std::string path = config;
        if (path.empty()) {
            if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0')
                path = env;
        }
        if (!path.empty())
            cfg = load_config(path);
        if (latitude) {
            cfg.site.latitude = *latitude;
            if (!tilt && !azimuth) {
                const Orientation o = default_orientation(*latitude);
                cfg.site.tilt = o.tilt;
                cfg.site.azimuth = o.azimuth;
            }
        }
        if (longitude)
            cfg.site.longitude = *longitude;
        if (tilt)
            cfg.site.tilt = *tilt;
        if (azimuth)
            cfg.site.azimuth = *azimuth;
        if (timezone)
            cfg.site.timezone_offset = *timezone;
        if (nominal_power)
            cfg.nominal_power = *nominal_power;
        if (beta0)
            cfg.estimator.beta0 = *beta0;
        if (min_window)
            cfg.estimator.min_window = *min_window;
        if (forgetting)
            cfg.estimator.forgetting = *forgetting;
        if (epsilon)
            cfg.estimator.fixed_epsilon = *epsilon;
        if (start_day)
            cfg.start_day = *start_day;
        cfg.validate();
        return cfg;
    }
};

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw InputError("cannot create output directory '" + dir.string() + "'");
}

template <class Writer>
void save(const fs::path& path, Writer&& writer)
{
    std::ostringstream out;
    writer(out);
    write_file(path, out.str());
}

double days_since(Timestamp t, Timestamp origin)
{
    return std::chrono::duration<double, std::chrono::days::period>(t - origin).count();
}

// Replaces the measured temperature by the forecast one where available.
void use_forecast_temperature(Dataset& data)
{
    if (!data.has_weather)
        throw InputError("--temperature forecast needs i_fc_wm2/t_fc_c columns");
    std::map<Timestamp, double> t_hat;
    for (const auto& w : data.weather)
        t_hat[w.target] = w.temperature;
    for (Sample& s : data.samples) {
        auto it = t_hat.find(s.time);
        if (it == t_hat.end())
            throw InputError("missing temperature forecast at " + format_timestamp(s.time));
        s.temperature = it->second;
    }
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& v)
{
    if (v.empty())
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    double m = 0.0;
    for (double x : v)
        m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return {m, std::sqrt(s / static_cast<double>(v.size()))};
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateOptions {
    std::string data;
    std::string out_dir = ".";
    std::string temperature = "measured";
};

int cmd_estimate(const CommonOptions& common, const EstimateOptions& opt, std::ostream& out, std::ostream& err)
{
    const AppConfig app = common.resolve();
    Dataset data = load_dataset(opt.data, app.site);
    if (opt.temperature == "forecast")
        use_forecast_temperature(data);

    const EstimationConfig cfg = app.estimation();
    const RunResult result = run(data.samples, cfg);
    if (result.light_samples == 0)
        err << "warning: dataset has no light-hour samples; parameters left at their initial values\n";

    const fs::path dir(opt.out_dir);
    ensure_dir(dir);
    save(dir / "trajectory.csv", [&](std::ostream& o) { write_trajectory(o, result.trajectory); });
    save(dir / "detection_log.csv", [&](std::ostream& o) { write_detection_log(o, result.log); });

    // Measured power against the clear-sky prediction with the running estimate.
    SvgChart chart;
    chart.title = "Clear-sky detection run";
    chart.x_label = "days since start";
    chart.y_label = "power [kW]";
    SvgSeries measured{"measured", {}, {}, false};
    SvgSeries predicted{"clear-sky model", {}, {}, false};
    SvgSeries detected{"clear-sky samples", {}, {}, true};
    std::vector<bool> in_window(data.samples.size(), false);
    for (const WindowRecord& r : result.log) {
        if (!r.accepted)
            continue;
        for (std::size_t i = r.anchor; i < r.anchor + r.length && i < in_window.size(); ++i)
            in_window[i] = true;
    }
    const Timestamp origin = data.samples.front().time;
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const Sample& s = data.samples[i];
        const double x = days_since(s.time, origin);
        measured.x.push_back(x);
        measured.y.push_back(s.power);
        predicted.x.push_back(x);
        predicted.y.push_back(clearsky_forecast(result.trajectory[i].params, s.clearsky_irradiance, s.temperature));
        if (in_window[i]) {
            detected.x.push_back(x);
            detected.y.push_back(s.power);
        }
    }
    chart.series = {measured, predicted, detected};
    write_file(dir / "estimate.svg", render_svg(chart));

    std::size_t accepted = 0;
    for (const auto& r : result.log)
        accepted += r.accepted ? 1 : 0;
    const PvusaParams& mu = result.state.mu_hat;
    out << "samples," << data.samples.size() << '\n'
        << "light_samples," << result.light_samples << '\n'
        << "accepted_windows," << accepted << '\n'
        << "updates," << result.state.updates << '\n'
        << "detected_pct," << format_number(100.0 * result.detected_fraction()) << '\n'
        << "mu1," << format_number(mu.mu1) << '\n'
        << "mu2," << format_number(mu.mu2) << '\n'
        << "mu3," << format_number(mu.mu3) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// forecast

struct ForecastOptions {
    std::string trajectory;
    std::string weather;
    std::string data;
    std::string kind = "DA";
    std::string day;
    std::string out = "forecast.csv";
};

int cmd_forecast(const CommonOptions& common, const ForecastOptions& opt, std::ostream& out, std::ostream& err)
{
    const AppConfig app = common.resolve();
    const ForecastKind kind = parse_forecast_kind(opt.kind);
    const auto offset = app.site.utc_offset();

    std::optional<Dataset> data;
    if (!opt.data.empty())
        data = load_dataset(opt.data, app.site);

    ForecastSeries series;
    series.kind = kind;
    std::size_t skipped = 0;

    if (kind == ForecastKind::naive) {
        if (!data)
            throw InputError("ODNP forecasts need --data");
        std::set<Date> days;
        for (const Sample& s : data->samples)
            days.insert(local_day(s.time, offset));
        for (Date d : days) {
            if (!opt.day.empty() && d != parse_date(opt.day))
                continue;
            if (d == *days.begin()) {
                ++skipped;
                continue;
            }
            try {
                const ForecastSeries day = odnp(data->samples, d, offset);
                series.entries.insert(series.entries.end(), day.entries.begin(), day.entries.end());
            } catch (const InputError&) {
                ++skipped;
            }
        }
    } else {
        if (opt.trajectory.empty())
            throw InputError("--trajectory is required for " + to_string(kind) + " forecasts");
        std::istringstream tin(read_file(opt.trajectory));
        const Trajectory traj = read_trajectory(tin, opt.trajectory);
        if (traj.empty())
            throw InputError(opt.trajectory + ": trajectory is empty");

        std::vector<WeatherForecast> wx;
        if (!opt.weather.empty()) {
            std::istringstream win(read_file(opt.weather));
            wx = read_weather(win, opt.weather);
        } else if (data && data->has_weather) {
            wx = data->weather;
        } else {
            throw InputError("weather forecasts needed: pass --weather or a --data file with forecast columns");
        }
        if (wx.empty())
            throw InputError("no weather forecasts available");
        const WeatherArchive archive(wx);

        std::set<Timestamp> targets;
        std::set<Date> days;
        for (const auto& w : wx) {
            targets.insert(w.target);
            days.insert(local_day(w.target, offset));
        }
        std::optional<Date> only;
        if (!opt.day.empty())
            only = parse_date(opt.day);

        if (kind == ForecastKind::hour_ahead) {
            for (Timestamp t : targets) {
                if (only && local_day(t, offset) != *only)
                    continue;
                if (!(clearsky_irradiance(app.site, t) > 0.0))
                    continue;
                if (latest_params(traj, t - kHourAheadLead, true) == nullptr) {
                    ++skipped;
                    continue;
                }
                const ForecastSeries s = ha_series(traj, archive, app.site, t);
                series.entries.insert(series.entries.end(), s.entries.begin(), s.entries.end());
            }
        } else {
            const Date first = only ? *only : *days.begin();
            const Date last = only ? *only : *days.rbegin();
            series = day_ahead_range(kind, traj, archive, app.site, first, last, &skipped);
        }
    }

    if (skipped > 0)
        err << "warning: " << skipped << " issuance(s) skipped for lack of data or parameters\n";
    save(opt.out, [&](std::ostream& o) { write_forecast(o, series); });
    out << "kind," << to_string(kind) << '\n' << "entries," << series.entries.size() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
    std::string forecast;
    std::string data;
    std::string out_dir = ".";
};

int cmd_evaluate(const CommonOptions& common, const EvaluateOptions& opt, std::ostream& out, std::ostream&)
{
    const AppConfig app = common.resolve();
    std::istringstream fin(read_file(opt.forecast));
    const ForecastSeries series = read_forecast(fin, opt.forecast);
    const Dataset data = load_dataset(opt.data, app.site);
    const auto offset = app.site.utc_offset();

    const AlignedForecast aligned = align_forecast(series.entries, data.samples, offset, app.start_day);
    if (aligned.times.empty())
        throw InputError("no light-hour samples with forecasts from day " + std::to_string(app.start_day));

    const MetricsReport report = evaluate(aligned.predicted, aligned.measured, app.nominal_power);
    const std::size_t n = aligned.times.size();
    const auto include = std::make_unique<bool[]>(n);
    std::fill_n(include.get(), n, true);
    const auto daily = daily_rmse(aligned.times, aligned.predicted, aligned.measured,
                                  std::span<const bool>(include.get(), n), offset);

    const fs::path dir(opt.out_dir);
    ensure_dir(dir);
    save(dir / "metrics.csv", [&](std::ostream& o) { write_metrics(o, report); });
    save(dir / "daily_rmse.csv", [&](std::ostream& o) { write_daily_rmse(o, daily); });

    SvgChart chart;
    chart.title = to_string(series.kind) + " forecast: daily RMSE";
    chart.x_label = "day";
    chart.y_label = "kW";
    SvgSeries rmse{"RMSE", {}, {}, false};
    SvgSeries spread{"std of measured power", {}, {}, false};
    const Date first = local_day(data.samples.front().time, offset);
    for (const auto& d : daily) {
        const double x = static_cast<double>((d.day - first).count() + 1);
        rmse.x.push_back(x);
        rmse.y.push_back(d.rmse);
        spread.x.push_back(x);
        spread.y.push_back(d.measured_std);
    }
    chart.series = {rmse, spread};
    write_file(dir / "evaluate.svg", render_svg(chart));

    std::ostringstream m;
    write_metrics(m, report);
    out << m.str();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> pod;
    std::optional<int> days;
    std::optional<std::string> schedule;
    std::optional<double> noise;
};

int cmd_simulate(const CommonOptions& common, const SimulateOptions& opt, std::ostream& out, std::ostream&)
{
    AppConfig app = common.resolve();
    if (opt.seed)
        app.seed = *opt.seed;
    if (opt.pod)
        app.pod = *opt.pod;
    if (opt.days)
        app.scenario.day_count = *opt.days;
    if (opt.schedule) {
        app.scenario.schedule = parse_schedule(*opt.schedule);
        if (!opt.days)
            app.scenario.day_count = static_cast<int>(app.scenario.schedule.size());
    }
    if (opt.noise)
        app.scenario.noise_fraction = *opt.noise;
    app.validate();

    const Scenario original = generate(app.scenario_config(), app.seed);
    const Scenario scaled = scale_clear_days(original, app.pod, app.pod_beta_min, app.pod_beta_max, app.seed + 1);
    const std::vector<WeatherForecast> weather = synthesize_weather_forecasts(original, app.forecast_noise, app.seed + 2);

    const fs::path dir(opt.out_dir);
    ensure_dir(dir);
    auto dataset = [&](const Scenario& sc) {
        Dataset d;
        d.samples = sc.samples;
        d.measured_irradiance = sc.irradiance;
        d.weather = weather;
        d.has_measured_irradiance = true;
        d.has_weather = true;
        return d;
    };
    save_dataset(dir / "dataset.csv", dataset(scaled));
    if (app.pod > 0.0)
        save_dataset(dir / "original.csv", dataset(original));
    save(dir / "weather.csv", [&](std::ostream& o) { write_weather(o, weather); });
    save(dir / "days.csv", [&](std::ostream& o) {
        o << "day,type,beta,intensity\n";
        for (const DayLabel& l : scaled.days)
            o << format_date(l.date) << ',' << to_string(l.plan.type) << ',' << format_number(l.plan.beta) << ','
              << format_number(l.plan.intensity) << '\n';
    });

    std::size_t counts[4] = {0, 0, 0, 0};
    for (const DayLabel& l : scaled.days)
        ++counts[static_cast<int>(l.plan.type)];
    out << "days," << scaled.days.size() << '\n'
        << "samples," << scaled.samples.size() << '\n'
        << "clear," << counts[0] << '\n'
        << "uniform," << counts[1] << '\n'
        << "stochastic," << counts[2] << '\n'
        << "scaled," << counts[3] << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep-beta0

struct SweepOptions {
    std::vector<std::string> data;
    std::string reference;
    std::string out_dir = ".";
    double grid_start = 0.40;
    double grid_stop = 0.95;
    double grid_step = 0.05;
    std::string temperature = "measured";
    unsigned jobs = 0;
};

struct SweepPoint {
    double beta0 = 0.0;
    double detected_pct = 0.0;
    std::optional<double> mape_np;
    MeanStd mu[3];
};

SweepPoint sweep_point(const AppConfig& app, const Dataset& data, const Dataset& reference, double beta0)
{
    EstimationConfig cfg = app.estimation();
    cfg.beta0 = beta0;
    cfg.fixed_epsilon.reset();
    const RunResult result = run(data.samples, cfg);

    SweepPoint p;
    p.beta0 = beta0;
    p.detected_pct = 100.0 * result.detected_fraction();

    const auto offset = app.site.utc_offset();
    const Date first = local_day(data.samples.front().time, offset);
    std::vector<double> mu[3];
    for (const TrajectoryPoint& t : result.trajectory) {
        if ((local_day(t.time, offset) - first).count() + 1 < app.start_day)
            continue;
        const auto a = t.params.as_array();
        for (int k = 0; k < 3; ++k)
            mu[k].push_back(a[static_cast<std::size_t>(k)]);
    }
    for (int k = 0; k < 3; ++k)
        p.mu[k] = mean_std(mu[k]);

    if (data.has_weather && !data.weather.empty()) {
        const WeatherArchive archive(data.weather);
        const Date last = local_day(data.samples.back().time, offset);
        const ForecastSeries da =
            day_ahead_range(ForecastKind::day_ahead, result.trajectory, archive, app.site, first, last);
        const AlignedForecast aligned = align_forecast(da.entries, reference.samples, offset, app.start_day);
        if (!aligned.times.empty())
            p.mape_np = evaluate(aligned.predicted, aligned.measured, app.nominal_power).mape_np;
    }
    return p;
}

std::vector<double> beta0_grid(double start, double stop, double step)
{
    if (!(step > 0.0) || !(stop >= start))
        throw InputError("invalid beta0 grid");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    for (long i = 0; i < n; ++i) {
        const double b = start + static_cast<double>(i) * step;
        if (!(b > 0.0 && b < 1.0))
            throw InputError("beta0 grid values must lie in (0, 1)");
        grid.push_back(std::round(b * 1e12) / 1e12);
    }
    return grid;
}

int cmd_sweep(const CommonOptions& common, const SweepOptions& opt, std::ostream& out, std::ostream&)
{
    const AppConfig app = common.resolve();
    const std::vector<double> grid = beta0_grid(opt.grid_start, opt.grid_stop, opt.grid_step);
    std::optional<Dataset> reference;
    if (!opt.reference.empty())
        reference = load_dataset(opt.reference, app.site);

    const fs::path dir(opt.out_dir);
    ensure_dir(dir);

    std::ostringstream table;
    table << "dataset,beta0,detected_pct,mape_np,mu1_mean,mu1_std,mu2_mean,mu2_std,mu3_mean,mu3_std\n";
    std::vector<SvgSeries> detection_lines;
    std::vector<SvgSeries> mape_lines;

    for (const std::string& path : opt.data) {
        Dataset data = load_dataset(path, app.site);
        if (opt.temperature == "forecast")
            use_forecast_temperature(data);
        const Dataset& ref = reference ? *reference : data;
        if (ref.samples.size() != data.samples.size() || ref.samples.front().time != data.samples.front().time)
            throw InputError("reference dataset does not cover the same samples as '" + path + "'");

        // Grid points are independent; results are gathered in grid order.
        std::vector<SweepPoint> points(grid.size());
        const unsigned jobs = opt.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.jobs;
        for (std::size_t first = 0; first < grid.size(); first += jobs) {
            std::vector<std::future<SweepPoint>> tasks;
            for (std::size_t i = first; i < std::min(grid.size(), first + jobs); ++i)
                tasks.push_back(std::async(std::launch::async, sweep_point, std::cref(app), std::cref(data),
                                           std::cref(ref), grid[i]));
            for (std::size_t i = 0; i < tasks.size(); ++i)
                points[first + i] = tasks[i].get();
        }

        const std::string name = fs::path(path).stem().string();
        SvgSeries det{name, {}, {}, false};
        SvgSeries mape{name, {}, {}, false};
        for (const SweepPoint& p : points) {
            table << name << ',' << format_number(p.beta0) << ',' << format_number(p.detected_pct) << ','
                  << (p.mape_np ? format_number(*p.mape_np) : std::string());
            for (const MeanStd& m : p.mu)
                table << ',' << format_number(m.mean) << ',' << format_number(m.std);
            table << '\n';
            det.x.push_back(p.beta0);
            det.y.push_back(p.detected_pct);
            mape.x.push_back(p.beta0);
            mape.y.push_back(p.mape_np.value_or(std::numeric_limits<double>::quiet_NaN()));
        }
        detection_lines.push_back(det);
        mape_lines.push_back(mape);
    }

    write_file(dir / "sweep.csv", table.str());
    SvgChart det_chart{"Detected clear-sky samples", "beta0", "detected [%]", detection_lines};
    write_file(dir / "sweep_detection.svg", render_svg(det_chart));
    SvgChart mape_chart{"Day-ahead MAPE_NP", "beta0", "MAPE_NP [%]", mape_lines};
    write_file(dir / "sweep_mape.svg", render_svg(mape_chart));
    out << table.str();
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Clear-sky harvesting PV plant estimator and forecaster", "pvcsd"};
    app.require_subcommand(1);

    CommonOptions common;

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "Run the clear-sky estimator over a dataset");
    common.attach(*estimate);
    common.attach_estimator(*estimate);
    estimate->add_option("--data", est.data, "Dataset CSV")->required();
    estimate->add_option("--out-dir", est.out_dir, "Output directory");
    estimate->add_option("--temperature", est.temperature, "Temperature channel for estimation")
        ->check(CLI::IsMember({"measured", "forecast"}));

    ForecastOptions fc;
    auto* forecast = app.add_subcommand("forecast", "Issue DA, HA, CS or ODNP power forecasts");
    common.attach(*forecast);
    forecast->add_option("--trajectory", fc.trajectory, "Parameter trajectory CSV");
    forecast->add_option("--weather", fc.weather, "Weather forecast CSV");
    forecast->add_option("--data", fc.data, "Dataset CSV (weather columns or ODNP input)");
    forecast->add_option("--kind", fc.kind, "Forecast product")->check(CLI::IsMember({"DA", "HA", "CS", "ODNP"}));
    forecast->add_option("--day", fc.day, "Restrict to one local day (YYYY-MM-DD)");
    forecast->add_option("--out", fc.out, "Output forecast CSV");

    EvaluateOptions ev;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a forecast against measurements");
    common.attach(*evaluate_cmd);
    common.attach_start_day(*evaluate_cmd);
    evaluate_cmd->add_option("--forecast", ev.forecast, "Forecast CSV")->required();
    evaluate_cmd->add_option("--data", ev.data, "Measured dataset CSV")->required();
    evaluate_cmd->add_option("--out-dir", ev.out_dir, "Output directory");

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic plant dataset");
    common.attach(*simulate);
    simulate->add_option("--out-dir", sim.out_dir, "Output directory");
    simulate->add_option("--seed", sim.seed, "Random seed");
    simulate->add_option("--pod", sim.pod, "Fraction of clear days scaled to uniform cloudiness (0, 0.05, 0.14 ...)");
    simulate->add_option("--days", sim.days, "Number of days");
    simulate->add_option("--schedule", sim.schedule, "Per-day plan, e.g. C,C,U:0.7,S:1.2");
    simulate->add_option("--noise", sim.noise, "Measurement noise std as a fraction of nominal power");

    SweepOptions sw;
    auto* sweep = app.add_subcommand("sweep-beta0", "Sensitivity of detection and DA error to beta0");
    common.attach(*sweep);
    common.attach_start_day(*sweep);
    sweep->add_option("--min-window", common.min_window, "Minimum window length l_min");
    sweep->add_option("--forgetting", common.forgetting, "RLS forgetting factor");
    sweep->add_option("--data", sw.data, "Dataset CSV (repeatable)")->required();
    sweep->add_option("--reference", sw.reference, "Unscaled dataset used to score forecasts");
    sweep->add_option("--out-dir", sw.out_dir, "Output directory");
    sweep->add_option("--grid-start", sw.grid_start, "First beta0");
    sweep->add_option("--grid-stop", sw.grid_stop, "Last beta0 (inclusive)");
    sweep->add_option("--grid-step", sw.grid_step, "beta0 step");
    sweep->add_option("--temperature", sw.temperature, "Temperature channel for estimation")
        ->check(CLI::IsMember({"measured", "forecast"}));
    sweep->add_option("--jobs", sw.jobs, "Parallel grid points (0 = hardware threads)");

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            std::ostringstream o, e_out;
            const int code = app.exit(e, o, e_out);
            out << o.str();
            err << e_out.str();
            return code == 0 ? kExitOk : kExitInput;
        }
        if (estimate->parsed())
            return cmd_estimate(common, est, out, err);
        if (forecast->parsed())
            return cmd_forecast(common, fc, out, err);
        if (evaluate_cmd->parsed())
            return cmd_evaluate(common, ev, out, err);
        if (simulate->parsed())
            return cmd_simulate(common, sim, out, err);
        if (sweep->parsed())
            return cmd_sweep(common, sw, out, err);
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitInput;
}

} // namespace pvcsd
