#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <string>
#include <string_view>

#include "greencg/errors.hpp"

namespace greencg {

// All timestamps in the system are UTC with one-second resolution.
using Timestamp = std::chrono::sys_seconds;

inline Timestamp now_utc() {
  return std::chrono::time_point_cast<std::chrono::seconds>(
      std::chrono::system_clock::now());
}

namespace detail {

inline bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len,
                             int& out) {
  if (pos + len > s.size()) return false;
  const char* first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc() && ptr == first + len;
}

}  // namespace detail

// Parses an RFC 3339 timestamp, e.g. "2025-03-01T14:00:00Z" or
// "2025-03-01T14:00:00.250+01:00". Fractional seconds are truncated.
inline Timestamp parse_rfc3339(std::string_view s) {
  using namespace std::chrono;
  auto fail = [&]() -> Timestamp {
    throw ValidationError("invalid RFC 3339 timestamp: '" + std::string(s) + "'");
  };

  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (s.size() < 20) fail();
  if (!detail::parse_fixed_uint(s, 0, 4, y) || s[4] != '-' ||
      !detail::parse_fixed_uint(s, 5, 2, mo) || s[7] != '-' ||
      !detail::parse_fixed_uint(s, 8, 2, d))
    fail();
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') fail();
  if (!detail::parse_fixed_uint(s, 11, 2, h) || s[13] != ':' ||
      !detail::parse_fixed_uint(s, 14, 2, mi) || s[16] != ':' ||
      !detail::parse_fixed_uint(s, 17, 2, sec))
    fail();

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      ++pos;
      ++digits;
    }
    if (digits == 0) fail();
  }

  seconds offset{0};
  if (pos >= s.size()) fail();
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    const bool neg = s[pos] == '-';
    int oh = 0, om = 0;
    if (!detail::parse_fixed_uint(s, pos + 1, 2, oh) || pos + 3 >= s.size() ||
        s[pos + 3] != ':' || !detail::parse_fixed_uint(s, pos + 4, 2, om))
      fail();
    if (oh > 23 || om > 59) fail();
    offset = hours(oh) + minutes(om);
    if (neg) offset = -offset;
    pos += 6;
  } else {
    fail();
  }
  if (pos != s.size()) fail();

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) fail();

  const sys_days date{ymd};
  return Timestamp{date.time_since_epoch() + hours(h) + minutes(mi) +
                   seconds(sec) - offset};
}

inline std::string format_rfc3339(Timestamp t) {
  using namespace std::chrono;
  const sys_days date = floor<days>(t);
  const year_month_day ymd{date};
  const hh_mm_ss<seconds> tod{t - date};
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()),
                static_cast<long>(tod.seconds().count()));
  return buf;
}

}  // namespace greencg
