#include "galaxy/time_util.h"

#include <cstdio>

#include "galaxy/error.h"

namespace galaxy {

using namespace std::chrono;

Timestamp ParseTimestamp(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail = 0;
  std::string buf(text);
  int n = std::sscanf(buf.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d,
                      &h, &mi, &s, &tail);
  if (n != 7 || tail != 'Z' || buf.size() != 20) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad RFC 3339 UTC timestamp '" + buf + "'");
  }
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) {
    throw Error(ErrorCode::kInvalidArgument, "timestamp out of range '" + buf + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string FormatTimestamp(Timestamp t) {
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  hh_mm_ss hms{t - day_point};
  char out[32];
  std::snprintf(out, sizeof(out), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return out;
}

TimeWindow TrailingWindow(Timestamp end, int days) {
  if (days <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "window length must be positive");
  }
  return TimeWindow{end - std::chrono::days{days}, end};
}

}  // namespace galaxy
