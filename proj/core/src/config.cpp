#include "pvcsd/config.hpp"

#include "pvcsd/error.hpp"
#include "pvcsd/io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <functional>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace pvcsd {

EstimationConfig AppConfig::estimation() const
{
    EstimationConfig cfg = estimator;
    cfg.nominal_power = nominal_power;
    cfg.utc_offset = site.utc_offset();
    return cfg;
}

ScenarioConfig AppConfig::scenario_config() const
{
    ScenarioConfig cfg = scenario;
    cfg.site = site;
    cfg.nominal_power = nominal_power;
    cfg.true_params = true_params;
    cfg.box = estimator.box;
    return cfg;
}

void AppConfig::validate() const
{
    site.validate();
    estimation().validate();
    if (start_day < 1)
        throw InputError("start_day must be at least 1");
    if (!(pod >= 0.0 && pod <= 1.0))
        throw InputError("pod must lie in [0, 1]");
}

namespace {

double to_double(const std::string& s, const std::string& key)
{
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw InputError("invalid number '" + s + "' for " + key);
    return v;
}

long long to_int(const std::string& s, const std::string& key)
{
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw InputError("invalid integer '" + s + "' for " + key);
    return v;
}

std::string strip(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

std::vector<DayPlan> parse_schedule(std::string_view text)
{
    std::vector<DayPlan> out;
    std::string token;
    auto flush = [&] {
        const std::string t = strip(token);
        token.clear();
        if (t.empty())
            return;
        DayPlan p;
        const auto colon = t.find(':');
        const std::string kind = t.substr(0, colon);
        const std::string arg = colon == std::string::npos ? std::string() : t.substr(colon + 1);
        if (kind == "C") {
            if (!arg.empty())
                throw InputError("schedule token '" + t + "': clear days take no argument");
        } else if (kind == "U") {
            p.type = DayType::uniform;
            p.beta = to_double(arg, "schedule token '" + t + "'");
            if (!(p.beta > 0.0 && p.beta < 1.0))
                throw InputError("schedule token '" + t + "': beta must lie in (0, 1)");
        } else if (kind == "S") {
            p.type = DayType::stochastic;
            p.intensity = to_double(arg, "schedule token '" + t + "'");
            if (!(p.intensity > 0.0))
                throw InputError("schedule token '" + t + "': intensity must be positive");
        } else {
            throw InputError("unknown schedule token '" + t + "'");
        }
        out.push_back(p);
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t')
            flush();
        else
            token += c;
    }
    flush();
    return out;
}

std::string format_schedule(const std::vector<DayPlan>& plans)
{
    std::string out;
    for (const DayPlan& p : plans) {
        if (!out.empty())
            out += ',';
        switch (p.type) {
        case DayType::clear: out += "C"; break;
        case DayType::uniform: out += "U:" + format_number(p.beta); break;
        case DayType::stochastic: out += "S:" + format_number(p.intensity); break;
        case DayType::scaled: throw InputError("scaled days cannot appear in an input schedule");
        }
    }
    return out;
}

AppConfig parse_config(std::string_view text, AppConfig base, const std::string& source)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }

    AppConfig& c = base;
    bool tilt_given = false;
    bool azimuth_given = false;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto num = [](double& field) -> Setter {
        return [&field](const std::string& v, const std::string& k) { field = to_double(v, k); };
    };
    const std::map<std::string, std::map<std::string, Setter>> table = {
        {"site",
         {{"latitude", num(c.site.latitude)},
          {"longitude", num(c.site.longitude)},
          {"tilt", [&](const std::string& v, const std::string& k) { c.site.tilt = to_double(v, k); tilt_given = true; }},
          {"azimuth",
           [&](const std::string& v, const std::string& k) { c.site.azimuth = to_double(v, k); azimuth_given = true; }},
          {"timezone", num(c.site.timezone_offset)}}},
        {"plant",
         {{"nominal_power_kw", num(c.nominal_power)},
          {"mu1", num(c.true_params.mu1)},
          {"mu2", num(c.true_params.mu2)},
          {"mu3", num(c.true_params.mu3)}}},
        {"estimator",
         {{"beta0", num(c.estimator.beta0)},
          {"min_window",
           [&](const std::string& v, const std::string& k) {
               const auto n = to_int(v, k);
               if (n < 2)
                   throw InputError(k + " must be at least 2");
               c.estimator.min_window = static_cast<std::size_t>(n);
           }},
          {"forgetting", num(c.estimator.forgetting)},
          {"initial_covariance", num(c.estimator.initial_covariance)},
          {"epsilon",
           [&](const std::string& v, const std::string& k) {
               if (v == "auto")
                   c.estimator.fixed_epsilon.reset();
               else
                   c.estimator.fixed_epsilon = to_double(v, k);
           }},
          {"epsilon_min", num(c.estimator.epsilon_clamp.min)},
          {"epsilon_max", num(c.estimator.epsilon_clamp.max)},
          {"eta2_min", num(c.estimator.box.eta2_lo)},
          {"eta2_max", num(c.estimator.box.eta2_hi)},
          {"eta3_min", num(c.estimator.box.eta3_lo)},
          {"eta3_max", num(c.estimator.box.eta3_hi)}}},
        {"scenario",
         {{"first_day", [&](const std::string& v, const std::string&) { c.scenario.first_day = parse_date(v); }},
          {"days",
           [&](const std::string& v, const std::string& k) {
               const auto n = to_int(v, k);
               if (n < 1 || n > 100000)
                   throw InputError(k + " must lie in [1, 100000]");
               c.scenario.day_count = static_cast<int>(n);
           }},
          {"seed",
           [&](const std::string& v, const std::string& k) {
               const auto n = to_int(v, k);
               if (n < 0)
                   throw InputError(k + " must be non-negative");
               c.seed = static_cast<std::uint64_t>(n);
           }},
          {"schedule", [&](const std::string& v, const std::string&) { c.scenario.schedule = parse_schedule(v); }},
          {"clear_weight", num(c.scenario.mix.clear)},
          {"uniform_weight", num(c.scenario.mix.uniform)},
          {"stochastic_weight", num(c.scenario.mix.stochastic)},
          {"uniform_beta_min", num(c.scenario.mix.uniform_beta_min)},
          {"uniform_beta_max", num(c.scenario.mix.uniform_beta_max)},
          {"intensity_min", num(c.scenario.mix.intensity_min)},
          {"intensity_max", num(c.scenario.mix.intensity_max)},
          {"temperature_mean", num(c.scenario.temperature.mean)},
          {"temperature_amplitude", num(c.scenario.temperature.amplitude)},
          {"temperature_peak_hour", num(c.scenario.temperature.peak_hour)},
          {"temperature_noise", num(c.scenario.temperature.noise)},
          {"noise_fraction", num(c.scenario.noise_fraction)},
          {"step_minutes",
           [&](const std::string& v, const std::string& k) {
               const auto n = to_int(v, k);
               if (n < 1 || 1440 % n != 0)
                   throw InputError(k + " must divide 1440");
               c.scenario.step = std::chrono::minutes{n};
           }},
          {"pod", num(c.pod)},
          {"pod_beta_min", num(c.pod_beta_min)},
          {"pod_beta_max", num(c.pod_beta_max)}}},
        {"forecast",
         {{"irradiance_nrmse", num(c.forecast_noise.irradiance_nrmse)},
          {"irradiance_correlation", num(c.forecast_noise.irradiance_correlation)},
          {"temperature_rmse", num(c.forecast_noise.temperature_rmse)},
          {"temperature_bias", num(c.forecast_noise.temperature_bias)}}},
        {"evaluation",
         {{"start_day",
           [&](const std::string& v, const std::string& k) { c.start_day = static_cast<int>(to_int(v, k)); }}}},
    };

    for (const auto& [section, entries] : tree) {
        auto sec = table.find(section);
        if (sec == table.end())
            throw InputError(source + ": unknown section [" + section + "]");
        if (!entries.data().empty())
            throw InputError(source + ": key '" + section + "' outside a section");
        for (const auto& [key, node] : entries) {
            auto it = sec->second.find(key);
            if (it == sec->second.end())
                throw InputError(source + ": unknown key '" + key + "' in [" + section + "]");
            try {
                it->second(strip(node.data()), section + "." + key);
            } catch (const InputError& e) {
                throw InputError(source + ": " + e.what());
            }
        }
    }

    if (tree.count("site") && (tree.get_child("site").count("latitude")) && !(tilt_given || azimuth_given)) {
        const Orientation o = default_orientation(c.site.latitude);
        c.site.tilt = o.tilt;
        c.site.azimuth = o.azimuth;
    }
    c.validate();
    return c;
}

AppConfig load_config(const std::filesystem::path& path, AppConfig base)
{
    return parse_config(read_file(path), std::move(base), path.string());
}

} // namespace pvcsd
