#include "botscore/time.hpp"

#include <chrono>
#include <cstdio>

#include "botscore/errors.hpp"

namespace botscore {

namespace {

bool read_digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
    if (pos + n > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

Timestamp floor_div(Timestamp a, Timestamp b) {
    Timestamp q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

Timestamp parse_iso8601(std::string_view s) {
    auto fail = [&]() -> ParseError {
        return ParseError("invalid ISO-8601 timestamp '" + std::string(s) + "'");
    };
    int year, month, day, hour, minute, second;
    if (!read_digits(s, 0, 4, year) || s.size() < 19 || s[4] != '-' ||
        !read_digits(s, 5, 2, month) || s[7] != '-' || !read_digits(s, 8, 2, day) ||
        (s[10] != 'T' && s[10] != 't' && s[10] != ' ') || !read_digits(s, 11, 2, hour) ||
        s[13] != ':' || !read_digits(s, 14, 2, minute) || s[16] != ':' ||
        !read_digits(s, 17, 2, second))
        throw fail();

    using namespace std::chrono;
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                       std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) throw fail();

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) throw fail();
    }
    Timestamp offset = 0;
    if (pos >= s.size()) throw fail();
    if (s[pos] == 'Z' || s[pos] == 'z') {
        ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
        int sign = s[pos] == '-' ? -1 : 1;
        int oh, om;
        ++pos;
        if (!read_digits(s, pos, 2, oh)) throw fail();
        pos += 2;
        if (pos < s.size() && s[pos] == ':') ++pos;
        if (!read_digits(s, pos, 2, om)) throw fail();
        pos += 2;
        if (oh > 23 || om > 59) throw fail();
        offset = sign * (oh * 3600 + om * 60);
    } else {
        throw fail();
    }
    if (pos != s.size()) throw fail();

    Timestamp days = sys_days{ymd}.time_since_epoch().count();
    return days * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset;
}

std::string format_iso8601(Timestamp t) {
    using namespace std::chrono;
    Timestamp days = floor_div(t, kSecondsPerDay);
    Timestamp rem = t - days * kSecondsPerDay;
    year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                  static_cast<int>(rem % 60));
    return buf;
}

Timestamp now_utc() {
    using namespace std::chrono;
    return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
}

int hour_of_day(Timestamp t) {
    Timestamp rem = t - floor_div(t, kSecondsPerDay) * kSecondsPerDay;
    return static_cast<int>(rem / kSecondsPerHour);
}

int day_of_week(Timestamp t) {
    Timestamp d = floor_div(t, kSecondsPerDay);
    return static_cast<int>(((d % 7) + 7) % 7);
}

}  // namespace botscore
