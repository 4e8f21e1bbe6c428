#ifndef GALAXY_TIME_UTIL_H_
#define GALAXY_TIME_UTIL_H_

#include <chrono>
#include <string>
#include <string_view>

namespace galaxy {

// All timestamps are UTC with one-second resolution, matching the MediaWiki
// API's revision timestamps.
using Timestamp = std::chrono::sys_seconds;

// Parses "YYYY-MM-DDTHH:MM:SSZ". Throws Error(kInvalidArgument) otherwise.
Timestamp ParseTimestamp(std::string_view text);
std::string FormatTimestamp(Timestamp t);

// Half-open interval [start, end).
struct TimeWindow {
  Timestamp start;
  Timestamp end;

  bool Contains(Timestamp t) const { return start <= t && t < end; }
};

// Window of `days` days ending at `end`. Throws if days <= 0.
TimeWindow TrailingWindow(Timestamp end, int days);

}  // namespace galaxy

#endif  // GALAXY_TIME_UTIL_H_
