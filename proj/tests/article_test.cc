#include "doctest.h"
#include "galaxy/article.h"
#include "galaxy/error.h"
#include "galaxy/time_util.h"

using namespace galaxy;

TEST_CASE("error carries its code in what()") {
  Error e(ErrorCode::kSeedNotFound, "seed 'X' does not exist");
  CHECK(e.code() == ErrorCode::kSeedNotFound);
  CHECK(e.message() == "seed 'X' does not exist");
  CHECK(std::string(e.what()) == "SeedNotFound: seed 'X' does not exist");
  CHECK(ErrorCodeName(ErrorCode::kCorruptStore) == "CorruptStore");
}

TEST_CASE("timestamps round trip") {
  Timestamp t = ParseTimestamp("2011-07-15T08:30:05Z");
  CHECK(FormatTimestamp(t) == "2011-07-15T08:30:05Z");
  CHECK(ParseTimestamp("1970-01-01T00:00:00Z").time_since_epoch().count() == 0);
  CHECK(ParseTimestamp("2000-03-01T00:00:00Z") - ParseTimestamp("2000-02-28T00:00:00Z") ==
        std::chrono::hours(48));
}

TEST_CASE("malformed timestamps are rejected") {
  for (const char *bad : {"", "2011-07-15", "2011-07-15 08:30:05Z", "2011-13-01T00:00:00Z",
                          "2011-07-15T08:30:05+02:00", "yesterday"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ParseTimestamp(bad), Error);
  }
}

TEST_CASE("time windows are half open") {
  Timestamp end = ParseTimestamp("2011-06-30T12:00:00Z");
  TimeWindow w = TrailingWindow(end, 14);
  CHECK(FormatTimestamp(w.start) == "2011-06-16T12:00:00Z");
  CHECK(w.Contains(w.start));
  CHECK_FALSE(w.Contains(w.end));
  CHECK(w.Contains(w.end - std::chrono::seconds(1)));
  CHECK_FALSE(w.Contains(w.start - std::chrono::seconds(1)));
}

TEST_CASE("assessment classes") {
  CHECK(QualityName(QualityClass::kFA) == "FA");
  CHECK(ParseQuality("GA") == QualityClass::kGA);
  CHECK(ParseQuality("start") == QualityClass::kStart);
  CHECK_THROWS_AS(ParseQuality("Excellent"), Error);
  CHECK(ParseQualityLenient("Excellent") == QualityClass::kUnrated);
  CHECK(ParseImportance("Top") == ImportanceClass::kTop);
  CHECK(ParseImportanceLenient("NA") == ImportanceClass::kUnrated);
  // Unrated sorts below every real class.
  CHECK(QualityClass::kUnrated < QualityClass::kList);
  CHECK(ImportanceClass::kUnrated < ImportanceClass::kLow);
}
