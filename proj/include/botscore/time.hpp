#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace botscore {

// UTC seconds since the Unix epoch. Every timestamp in the library uses this.
using Timestamp = std::int64_t;

constexpr Timestamp kSecondsPerDay = 86400;
constexpr Timestamp kSecondsPerHour = 3600;

// Accepts `YYYY-MM-DDTHH:MM:SS[.fff](Z|±HH:MM|±HHMM)`; a space may replace `T`.
// Fractional seconds are truncated. Throws ParseError.
Timestamp parse_iso8601(std::string_view text);

// Always `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(Timestamp t);

Timestamp now_utc();

// 0..23
int hour_of_day(Timestamp t);

// 0 = Thursday 1970-01-01; callers only need a stable 7-cycle.
int day_of_week(Timestamp t);

}  // namespace botscore
