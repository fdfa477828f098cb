#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace pvcsd {

// All timestamps are UTC with one-second resolution.
using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

// Accepts "YYYY-MM-DDTHH:MM[:SS][Z]" and the same with a space separator.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// "YYYY-MM-DD".
Date parse_date(std::string_view text);
std::string format_date(Date d);

// Offset of local (site) time from UTC; fractional hours are rounded to the second.
std::chrono::seconds utc_offset_from_hours(double hours);

// Local calendar day containing t.
Date local_day(Timestamp t, std::chrono::seconds utc_offset);

// UTC instant of local midnight opening day d.
Timestamp local_midnight(Date d, std::chrono::seconds utc_offset);

// Hour of day in local time, in [0, 24).
double local_hour(Timestamp t, std::chrono::seconds utc_offset);

} // namespace pvcsd
