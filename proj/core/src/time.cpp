#include "pvcsd/time.hpp"

#include "pvcsd/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace pvcsd {

namespace {

int parse_field(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole)
{
    int value = 0;
    if (pos + len > text.size())
        throw InputError("truncated timestamp '" + std::string(whole) + "'");
    auto first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc() || ptr != first + len)
        throw InputError("malformed timestamp '" + std::string(whole) + "'");
    return value;
}

void expect_char(std::string_view text, std::size_t pos, std::string_view allowed, std::string_view whole)
{
    if (pos >= text.size() || allowed.find(text[pos]) == std::string_view::npos)
        throw InputError("malformed timestamp '" + std::string(whole) + "'");
}

} // namespace

Date parse_date(std::string_view text)
{
    using namespace std::chrono;
    if (text.size() < 10)
        throw InputError("malformed date '" + std::string(text) + "'");
    int y = parse_field(text, 0, 4, text);
    expect_char(text, 4, "-", text);
    int m = parse_field(text, 5, 2, text);
    expect_char(text, 7, "-", text);
    int d = parse_field(text, 8, 2, text);
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        throw InputError("invalid calendar date '" + std::string(text) + "'");
    return sys_days{ymd};
}

Timestamp parse_timestamp(std::string_view text)
{
    using namespace std::chrono;
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r'))
        text.remove_suffix(1);
    if (!text.empty() && text.back() == 'Z')
        text.remove_suffix(1);
    Date d = parse_date(text.substr(0, 10));
    if (text.size() == 10)
        return Timestamp{d};
    expect_char(text, 10, "T ", text);
    int hh = parse_field(text, 11, 2, text);
    expect_char(text, 13, ":", text);
    int mm = parse_field(text, 14, 2, text);
    int ss = 0;
    if (text.size() > 16) {
        expect_char(text, 16, ":", text);
        ss = parse_field(text, 17, 2, text);
        if (text.size() != 19)
            throw InputError("malformed timestamp '" + std::string(text) + "'");
    } else if (text.size() != 16) {
        throw InputError("malformed timestamp '" + std::string(text) + "'");
    }
    if (hh > 23 || mm > 59 || ss > 60)
        throw InputError("time of day out of range in '" + std::string(text) + "'");
    return Timestamp{d} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_date(Date d)
{
    using namespace std::chrono;
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp t)
{
    using namespace std::chrono;
    auto d = floor<days>(t);
    hh_mm_ss hms{t - d};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", format_date(d).c_str(),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

std::chrono::seconds utc_offset_from_hours(double hours)
{
    require_finite(hours, "timezone offset");
    if (std::abs(hours) > 14.0)
        throw InputError("timezone offset must lie in [-14, 14] hours");
    return std::chrono::seconds{static_cast<long long>(std::llround(hours * 3600.0))};
}

Date local_day(Timestamp t, std::chrono::seconds utc_offset)
{
    return std::chrono::floor<std::chrono::days>(t + utc_offset);
}

Timestamp local_midnight(Date d, std::chrono::seconds utc_offset)
{
    return Timestamp{d} - utc_offset;
}

double local_hour(Timestamp t, std::chrono::seconds utc_offset)
{
    auto local = t + utc_offset;
    auto since_midnight = local - std::chrono::floor<std::chrono::days>(local);
    return static_cast<double>(since_midnight.count()) / 3600.0;
}

} // namespace pvcsd
