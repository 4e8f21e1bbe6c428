#include <fstream>
#include <thread>

#include "doctest.h"
#include "galaxy/error.h"
#include "galaxy/store.h"
#include "galaxy/wikitext_links.h"
#include "support.h"

using namespace galaxy;
using namespace galaxy::testing;

namespace {

CacheEntry Entry(std::string title, int64_t rev_id, const char *ts,
                 std::vector<std::string> outlinks = {"Other"}) {
  CacheEntry e;
  e.title = std::move(title);
  e.rev_id = rev_id;
  e.timestamp = ParseTimestamp(ts);
  e.page_id = 7;
  e.size_bytes = 42;
  e.assessment = {QualityClass::kB, ImportanceClass::kMid};
  e.outlinks = std::move(outlinks);
  e.extlinks = {"http://example.org/a"};
  e.fetched_at = ParseTimestamp("2011-07-01T00:00:00Z");
  return e;
}

ErrorCode OpenError(const std::filesystem::path &dir) {
  try {
    Store store(dir);
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("store opened");
  return ErrorCode::kInvalidArgument;
}

void Overwrite(const std::filesystem::path &file, const std::string &content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace

TEST_CASE("in-memory put and get") {
  Store store;
  CHECK(store.Put(Entry("A", 1, "2010-01-01T00:00:00Z", {"B"})));
  CHECK(store.Put(Entry("A", 2, "2011-01-01T00:00:00Z", {"C"})));
  CHECK_FALSE(store.Get("A", ParseTimestamp("2009-12-31T23:59:59Z")).has_value());
  CHECK(store.Get("A", ParseTimestamp("2010-06-01T00:00:00Z"))->rev_id == 1);
  CHECK(store.Get("A", ParseTimestamp("2011-01-01T00:00:00Z"))->rev_id == 2);
  CHECK_FALSE(store.Get("B", ParseTimestamp("2012-01-01T00:00:00Z")).has_value());
  CHECK(store.Find("A", 1)->outlinks == std::vector<std::string>{"B"});
  CHECK_FALSE(store.Find("A", 3).has_value());
  CHECK(store.size() == 2);
}

TEST_CASE("first write wins") {
  Store store;
  CHECK(store.Put(Entry("A", 1, "2010-01-01T00:00:00Z", {"B"})));
  CHECK_FALSE(store.Put(Entry("A", 1, "2010-01-01T00:00:00Z", {"Changed"})));
  CHECK(store.Find("A", 1)->outlinks == std::vector<std::string>{"B"});
}

TEST_CASE("entries survive reopening") {
  TempDir dir;
  {
    Store store(dir.path());
    store.Put(Entry("A", 1, "2010-01-01T00:00:00Z"));
    store.Put(Entry("Zürich", 9, "2010-02-01T00:00:00Z", {"Switzerland"}));
  }
  Store again(dir.path());
  CHECK(again.size() == 2);
  CHECK(*again.Find("A", 1) == Entry("A", 1, "2010-01-01T00:00:00Z"));
  CHECK(again.Find("Zürich", 9)->outlinks == std::vector<std::string>{"Switzerland"});
  CHECK_FALSE(again.Put(Entry("A", 1, "2010-01-01T00:00:00Z")));
}

TEST_CASE("concurrent puts of distinct keys") {
  TempDir dir;
  {
    Store store(dir.path());
    std::vector<std::jthread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&store, t] {
        for (int i = 0; i < 25; ++i) {
          store.Put(Entry("T" + std::to_string(t), i, "2010-01-01T00:00:00Z"));
        }
      });
    }
  }
  Store again(dir.path());
  CHECK(again.size() == 100);
}

TEST_CASE("corruption is detected on open") {
  TempDir dir;
  {
    Store store(dir.path());
    store.Put(Entry("A", 1, "2010-01-01T00:00:00Z"));
    store.Put(Entry("B", 2, "2010-01-01T00:00:00Z"));
  }
  const auto log = dir.path() / "entries.log";
  const std::string good = ReadFile(log);

  SUBCASE("flipped payload byte") {
    std::string bad = good;
    bad[bad.find("\"A\"") + 1] = 'Q';
    Overwrite(log, bad);
    CHECK(OpenError(dir.path()) == ErrorCode::kCorruptStore);
  }
  SUBCASE("truncated last record") {
    Overwrite(log, good.substr(0, good.size() - 5));
    CHECK(OpenError(dir.path()) == ErrorCode::kCorruptStore);
  }
  SUBCASE("missing checksum separator") {
    Overwrite(log, "garbage line\n" + good);
    CHECK(OpenError(dir.path()) == ErrorCode::kCorruptStore);
  }
  SUBCASE("valid checksum over invalid json") {
    Overwrite(log, "00000000\t\n");
    CHECK(OpenError(dir.path()) == ErrorCode::kCorruptStore);
  }
}

TEST_CASE("export and import preserve links") {
  auto corpus = LoadFixture("abortion");
  Store store;
  size_t revisions = 0;
  for (const auto &a : corpus->articles()) revisions += a.revisions.size();
  CHECK(store.ImportCorpus(*corpus, corpus->LatestTimestamp()) == revisions);
  CHECK(store.ImportCorpus(*corpus, corpus->LatestTimestamp()) == 0);

  FixtureCorpus exported = store.ExportCorpus();
  Store reimported;
  reimported.ImportCorpus(exported, corpus->LatestTimestamp());
  REQUIRE(reimported.size() == store.size());
  for (const CacheEntry &e : store.Entries()) {
    auto other = reimported.Find(e.title, e.rev_id);
    REQUIRE(other.has_value());
    CAPTURE(e.title);
    CHECK(other->outlinks == e.outlinks);
    CHECK(other->extlinks == e.extlinks);
    CHECK(other->timestamp == e.timestamp);
    CHECK(other->assessment == e.assessment);
  }
}

TEST_CASE("cache entry json round trip") {
  CacheEntry e = Entry("A", 1, "2010-01-01T00:00:00Z");
  CHECK(CacheEntryFromJson(CacheEntryToJson(e)) == e);
}
