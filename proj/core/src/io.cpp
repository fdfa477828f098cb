#include "pvcsd/io.hpp"

#include "pvcsd/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

namespace pvcsd {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw NumericalError("cannot format number");
    return std::string(buf, end);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw InputError("failed writing '" + path.string() + "'");
}

namespace {

class CsvReader {
public:
    CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    // Reads the header; throws on empty input.
    std::vector<std::string> header(const char* what)
    {
        std::vector<std::string> cols;
        if (!next(cols))
            throw InputError(source_ + ": empty " + std::string(what));
        return cols;
    }

    bool next(std::vector<std::string>& fields)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            fields.clear();
            std::size_t pos = 0;
            while (true) {
                const std::size_t comma = line.find(',', pos);
                fields.push_back(trim(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
                if (comma == std::string::npos)
                    break;
                pos = comma + 1;
            }
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError(source_ + ":" + std::to_string(line_) + ": " + msg);
    }

    double number(const std::string& s, const char* column) const
    {
        double v = 0.0;
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        const char* first = s.data();
        const char* last = s.data() + s.size();
        if (!s.empty() && *first == '+')
            ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (s.empty() || ec != std::errc{} || ptr != last)
            fail(std::string("cannot parse ") + column + " '" + s + "'");
        return v;
    }

    std::optional<double> optional_number(const std::string& s, const char* column) const
    {
        if (s.empty())
            return std::nullopt;
        return number(s, column);
    }

    std::size_t index(const std::string& s, const char* column) const
    {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            fail(std::string("cannot parse ") + column + " '" + s + "'");
        return v;
    }

    bool flag(const std::string& s, const char* column) const
    {
        if (s == "1" || s == "true")
            return true;
        if (s == "0" || s == "false")
            return false;
        fail(std::string("cannot parse ") + column + " '" + s + "'");
    }

    Timestamp time(const std::string& s, const char* column) const
    {
        try {
            return parse_timestamp(s);
        } catch (const InputError& e) {
            fail(std::string(column) + ": " + e.what());
        }
    }

    void expect_header(const std::vector<std::string>& got, std::initializer_list<const char*> want) const
    {
        std::size_t i = 0;
        bool ok = got.size() == want.size();
        for (const char* w : want) {
            if (!ok)
                break;
            ok = got[i++] == w;
        }
        if (!ok) {
            std::string expected;
            for (const char* w : want)
                expected += (expected.empty() ? "" : ",") + std::string(w);
            fail("unexpected header, expected '" + expected + "'");
        }
    }

    void expect_fields(const std::vector<std::string>& fields, std::size_t n) const
    {
        if (fields.size() != n)
            fail("expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));
    }

    std::size_t line() const { return line_; }

private:
    static std::string trim(std::string s)
    {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos)
            return {};
        const auto e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
    }

    std::istream& in_;
    std::string source_;
    std::size_t line_ = 0;
};

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

} // namespace

// ---------------------------------------------------------------------------
// Dataset

Dataset read_dataset(std::istream& in, const SiteConfig& site, const std::string& source)
{
    site.validate();
    CsvReader csv(in, source);
    const auto header = csv.header("dataset");

    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        static const char* known[] = {"timestamp", "p_m_kw", "t_c", "i_m_wm2", "i_fc_wm2", "t_fc_c"};
        bool ok = false;
        for (const char* k : known)
            ok = ok || header[i] == k;
        if (!ok)
            csv.fail("unknown column '" + header[i] + "'");
        if (!col.emplace(header[i], i).second)
            csv.fail("duplicate column '" + header[i] + "'");
    }
    for (const char* req : {"timestamp", "p_m_kw", "t_c"}) {
        if (!col.count(req))
            csv.fail(std::string("missing required column '") + req + "'");
    }
    if (col.count("i_fc_wm2") != col.count("t_fc_c"))
        csv.fail("forecast columns i_fc_wm2 and t_fc_c must appear together");

    Dataset data;
    data.has_measured_irradiance = col.count("i_m_wm2") > 0;
    data.has_weather = col.count("i_fc_wm2") > 0;
    const auto offset = site.utc_offset();

    std::vector<std::string> f;
    std::optional<std::chrono::seconds> step;
    while (csv.next(f)) {
        csv.expect_fields(f, header.size());
        Sample s;
        s.time = csv.time(f[col["timestamp"]], "timestamp");
        if (f[col["p_m_kw"]].empty())
            csv.fail("missing p_m_kw");
        if (f[col["t_c"]].empty())
            csv.fail("missing t_c");
        s.power = csv.number(f[col["p_m_kw"]], "p_m_kw");
        s.temperature = csv.number(f[col["t_c"]], "t_c");
        if (!std::isfinite(s.power) || s.power < 0.0)
            csv.fail("p_m_kw must be finite and non-negative (row " + std::to_string(data.samples.size() + 1) + ")");
        if (!std::isfinite(s.temperature))
            csv.fail("t_c must be finite");

        if (!data.samples.empty()) {
            const auto dt = s.time - data.samples.back().time;
            if (dt <= std::chrono::seconds::zero())
                csv.fail("timestamps must be strictly increasing");
            if (step && dt != *step)
                csv.fail("irregular sampling step");
            step = std::chrono::duration_cast<std::chrono::seconds>(dt);
        }
        s.clearsky_irradiance = clearsky_irradiance(site, s.time);

        if (data.has_measured_irradiance) {
            const auto v = csv.optional_number(f[col["i_m_wm2"]], "i_m_wm2");
            if (v && (!std::isfinite(*v) || *v < 0.0))
                csv.fail("i_m_wm2 must be finite and non-negative");
            data.measured_irradiance.push_back(v.value_or(std::numeric_limits<double>::quiet_NaN()));
        }
        if (data.has_weather) {
            const auto i = csv.optional_number(f[col["i_fc_wm2"]], "i_fc_wm2");
            const auto t = csv.optional_number(f[col["t_fc_c"]], "t_fc_c");
            if (i && (!std::isfinite(*i) || *i < 0.0))
                csv.fail("i_fc_wm2 must be finite and non-negative");
            if (t && !std::isfinite(*t))
                csv.fail("t_fc_c must be finite");
            if (i && t)
                data.weather.push_back({day_ahead_issue_time(local_day(s.time, offset), offset), s.time, *i, *t});
        }
        data.samples.push_back(s);
    }
    if (data.samples.empty())
        throw InputError(source + ": empty dataset (no data rows)");
    return data;
}

Dataset load_dataset(const std::filesystem::path& path, const SiteConfig& site)
{
    std::istringstream in(read_file(path));
    return read_dataset(in, site, path.string());
}

void write_dataset(std::ostream& out, const Dataset& data)
{
    if (data.has_measured_irradiance && data.measured_irradiance.size() != data.samples.size())
        throw InputError("measured irradiance channel does not align with samples");
    std::map<Timestamp, const WeatherForecast*> wx;
    for (const auto& w : data.weather)
        wx[w.target] = &w;

    out << "timestamp,p_m_kw,t_c";
    if (data.has_measured_irradiance)
        out << ",i_m_wm2";
    if (data.has_weather)
        out << ",i_fc_wm2,t_fc_c";
    out << '\n';
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const Sample& s = data.samples[i];
        out << format_timestamp(s.time) << ',' << format_number(s.power) << ',' << format_number(s.temperature);
        if (data.has_measured_irradiance) {
            const double v = data.measured_irradiance[i];
            out << ',' << (std::isnan(v) ? std::string() : format_number(v));
        }
        if (data.has_weather) {
            auto it = wx.find(s.time);
            if (it == wx.end())
                out << ",,";
            else
                out << ',' << format_number(it->second->irradiance) << ',' << format_number(it->second->temperature);
        }
        out << '\n';
    }
}

void save_dataset(const std::filesystem::path& path, const Dataset& data)
{
    std::ostringstream out;
    write_dataset(out, data);
    write_file(path, out.str());
}

// ---------------------------------------------------------------------------
// Trajectory

void write_trajectory(std::ostream& out, const Trajectory& traj)
{
    out << "timestamp,mu1,mu2,mu3,updated\n";
    for (const auto& p : traj) {
        out << format_timestamp(p.time) << ',' << format_number(p.params.mu1) << ',' << format_number(p.params.mu2)
            << ',' << format_number(p.params.mu3) << ',' << (p.updated ? 1 : 0) << '\n';
    }
}

Trajectory read_trajectory(std::istream& in, const std::string& source)
{
    CsvReader csv(in, source);
    csv.expect_header(csv.header("trajectory"), {"timestamp", "mu1", "mu2", "mu3", "updated"});
    Trajectory traj;
    std::vector<std::string> f;
    while (csv.next(f)) {
        csv.expect_fields(f, 5);
        TrajectoryPoint p;
        p.time = csv.time(f[0], "timestamp");
        p.params = {csv.number(f[1], "mu1"), csv.number(f[2], "mu2"), csv.number(f[3], "mu3")};
        p.updated = csv.flag(f[4], "updated");
        if (!traj.empty() && p.time <= traj.back().time)
            csv.fail("trajectory timestamps must be strictly increasing");
        traj.push_back(p);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Forecast series

void write_forecast(std::ostream& out, const ForecastSeries& series)
{
    const std::string kind = to_string(series.kind);
    out << "issued_at,target,kind,p_hat_kw,params_version\n";
    for (const auto& e : series.entries) {
        out << format_timestamp(e.issued_at) << ',' << format_timestamp(e.target) << ',' << kind << ','
            << opt(e.power) << ',' << format_timestamp(e.params_version) << '\n';
    }
}

ForecastSeries read_forecast(std::istream& in, const std::string& source)
{
    CsvReader csv(in, source);
    csv.expect_header(csv.header("forecast"), {"issued_at", "target", "kind", "p_hat_kw", "params_version"});
    ForecastSeries series;
    std::vector<std::string> f;
    bool first = true;
    while (csv.next(f)) {
        csv.expect_fields(f, 5);
        ForecastKind kind{};
        try {
            kind = parse_forecast_kind(f[2]);
        } catch (const InputError& e) {
            csv.fail(e.what());
        }
        if (first)
            series.kind = kind;
        else if (kind != series.kind)
            csv.fail("mixed forecast kinds in one file");
        first = false;
        ForecastEntry e;
        e.issued_at = csv.time(f[0], "issued_at");
        e.target = csv.time(f[1], "target");
        e.power = csv.optional_number(f[3], "p_hat_kw");
        e.params_version = csv.time(f[4], "params_version");
        series.entries.push_back(e);
    }
    return series;
}

// ---------------------------------------------------------------------------
// Detection log

void write_detection_log(std::ostream& out, std::span<const WindowRecord> log)
{
    out << "day,anchor,start,length,test1,test2,test3,accepted,adapted,available_at,mu1,mu2,mu3,note\n";
    for (const auto& r : log) {
        if (r.note.find_first_of(",\n") != std::string::npos)
            throw InputError("detection note may not contain commas or newlines");
        out << r.day << ',' << r.anchor << ',' << format_timestamp(r.start) << ',' << r.length << ',' << r.test1
            << ',' << r.test2 << ',' << r.test3 << ',' << r.accepted << ',' << r.adapted << ',' << r.available_at
            << ',' << format_number(r.mu_after.mu1) << ',' << format_number(r.mu_after.mu2) << ','
            << format_number(r.mu_after.mu3) << ',' << r.note << '\n';
    }
}

std::vector<WindowRecord> read_detection_log(std::istream& in, const std::string& source)
{
    CsvReader csv(in, source);
    csv.expect_header(csv.header("detection log"), {"day", "anchor", "start", "length", "test1", "test2", "test3",
                                                    "accepted", "adapted", "available_at", "mu1", "mu2", "mu3", "note"});
    std::vector<WindowRecord> log;
    std::vector<std::string> f;
    while (csv.next(f)) {
        csv.expect_fields(f, 14);
        WindowRecord r;
        r.day = static_cast<int>(csv.index(f[0], "day"));
        r.anchor = csv.index(f[1], "anchor");
        r.start = csv.time(f[2], "start");
        r.length = csv.index(f[3], "length");
        r.test1 = csv.flag(f[4], "test1");
        r.test2 = csv.flag(f[5], "test2");
        r.test3 = csv.flag(f[6], "test3");
        r.accepted = csv.flag(f[7], "accepted");
        r.adapted = csv.flag(f[8], "adapted");
        r.available_at = csv.index(f[9], "available_at");
        r.mu_after = {csv.number(f[10], "mu1"), csv.number(f[11], "mu2"), csv.number(f[12], "mu3")};
        r.note = f[13];
        log.push_back(r);
    }
    return log;
}

// ---------------------------------------------------------------------------
// Metrics

void write_metrics(std::ostream& out, const MetricsReport& m)
{
    out << "metric,value\n";
    out << "rmse," << format_number(m.rmse) << '\n';
    out << "mbe," << format_number(m.mbe) << '\n';
    out << "mape," << opt(m.mape) << '\n';
    out << "nrmse," << opt(m.nrmse) << '\n';
    out << "r2," << opt(m.r2) << '\n';
    out << "rmse_np," << format_number(m.rmse_np) << '\n';
    out << "mape_np," << format_number(m.mape_np) << '\n';
    out << "n_samples," << m.n_samples << '\n';
}

MetricsReport read_metrics(std::istream& in, const std::string& source)
{
    CsvReader csv(in, source);
    csv.expect_header(csv.header("metrics"), {"metric", "value"});
    MetricsReport m;
    std::vector<std::string> f;
    std::map<std::string, bool> seen;
    while (csv.next(f)) {
        csv.expect_fields(f, 2);
        const std::string& k = f[0];
        if (seen[k])
            csv.fail("duplicate metric '" + k + "'");
        seen[k] = true;
        if (k == "rmse")
            m.rmse = csv.number(f[1], "rmse");
        else if (k == "mbe")
            m.mbe = csv.number(f[1], "mbe");
        else if (k == "mape")
            m.mape = csv.optional_number(f[1], "mape");
        else if (k == "nrmse")
            m.nrmse = csv.optional_number(f[1], "nrmse");
        else if (k == "r2")
            m.r2 = csv.optional_number(f[1], "r2");
        else if (k == "rmse_np")
            m.rmse_np = csv.number(f[1], "rmse_np");
        else if (k == "mape_np")
            m.mape_np = csv.number(f[1], "mape_np");
        else if (k == "n_samples")
            m.n_samples = csv.index(f[1], "n_samples");
        else
            csv.fail("unknown metric '" + k + "'");
    }
    for (const char* k : {"rmse", "mbe", "mape", "nrmse", "r2", "rmse_np", "mape_np", "n_samples"}) {
        if (!seen[k])
            throw InputError(source + ": missing metric '" + k + "'");
    }
    return m;
}

// ---------------------------------------------------------------------------
// Weather

void write_weather(std::ostream& out, std::span<const WeatherForecast> weather)
{
    out << "issued_at,target,i_hat_wm2,t_hat_c\n";
    for (const auto& w : weather) {
        out << format_timestamp(w.issued_at) << ',' << format_timestamp(w.target) << ','
            << format_number(w.irradiance) << ',' << format_number(w.temperature) << '\n';
    }
}

std::vector<WeatherForecast> read_weather(std::istream& in, const std::string& source)
{
    CsvReader csv(in, source);
    csv.expect_header(csv.header("weather file"), {"issued_at", "target", "i_hat_wm2", "t_hat_c"});
    std::vector<WeatherForecast> out;
    std::vector<std::string> f;
    while (csv.next(f)) {
        csv.expect_fields(f, 4);
        WeatherForecast w;
        w.issued_at = csv.time(f[0], "issued_at");
        w.target = csv.time(f[1], "target");
        w.irradiance = csv.number(f[2], "i_hat_wm2");
        w.temperature = csv.number(f[3], "t_hat_c");
        if (!std::isfinite(w.irradiance) || w.irradiance < 0.0)
            csv.fail("i_hat_wm2 must be finite and non-negative");
        if (!std::isfinite(w.temperature))
            csv.fail("t_hat_c must be finite");
        if (w.issued_at > w.target)
            csv.fail("forecast issued after its target");
        out.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Daily RMSE

void write_daily_rmse(std::ostream& out, std::span<const DailyRmse> rows)
{
    out << "day,rmse_kw,measured_std_kw,n_samples\n";
    for (const auto& r : rows)
        out << format_date(r.day) << ',' << format_number(r.rmse) << ',' << format_number(r.measured_std) << ','
            << r.n_samples << '\n';
}

std::vector<DailyRmse> read_daily_rmse(std::istream& in, const std::string& source)
{
    CsvReader csv(in, source);
    csv.expect_header(csv.header("daily RMSE file"), {"day", "rmse_kw", "measured_std_kw", "n_samples"});
    std::vector<DailyRmse> out;
    std::vector<std::string> f;
    while (csv.next(f)) {
        csv.expect_fields(f, 4);
        DailyRmse r;
        try {
            r.day = parse_date(f[0]);
        } catch (const InputError& e) {
            csv.fail(e.what());
        }
        r.rmse = csv.number(f[1], "rmse_kw");
        r.measured_std = csv.number(f[2], "measured_std_kw");
        r.n_samples = csv.index(f[3], "n_samples");
        out.push_back(r);
    }
    return out;
}

} // namespace pvcsd
