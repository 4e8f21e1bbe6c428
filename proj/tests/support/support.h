#ifndef GALAXY_TESTS_SUPPORT_H_
#define GALAXY_TESTS_SUPPORT_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "galaxy/fixture.h"
#include "galaxy/graph.h"
#include "galaxy/mediawiki.h"
#include "galaxy/source.h"

namespace galaxy::testing {

std::filesystem::path DataDir();
std::filesystem::path FixtureDir(const std::string &name);
std::shared_ptr<const FixtureCorpus> LoadFixture(const std::string &name);
std::shared_ptr<ArticleSource> FixtureSource(const std::string &name);
std::string ReadFile(const std::filesystem::path &path);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// FixtureBackend that counts every call and remembers the newest revision
// whose text it handed out.
class CountingBackend : public ArticleBackend {
 public:
  explicit CountingBackend(std::shared_ptr<const FixtureCorpus> corpus);

  std::vector<std::string> Search(std::string_view term, size_t limit) override;
  PageInfo FetchPageInfo(const std::string &title) override;
  std::string FetchRevisionText(const std::string &title, int64_t rev_id) override;
  uint64_t FetchBacklinkCount(const std::string &title) override;
  Timestamp ReferenceTime() override;

  size_t calls() const { return calls_; }
  size_t text_calls() const { return text_calls_; }
  std::optional<Timestamp> newest_text() const;
  void Reset();

 private:
  FixtureBackend inner_;
  std::shared_ptr<const FixtureCorpus> corpus_;
  std::atomic<size_t> calls_{0};
  std::atomic<size_t> text_calls_{0};
  mutable std::mutex mu_;
  std::optional<Timestamp> newest_text_;
};

// Clock that only moves when somebody sleeps.
class ManualClock : public Clock {
 public:
  TimePoint Now() override;
  void SleepUntil(TimePoint t) override;
  std::vector<Duration> sleeps() const;

 private:
  mutable std::mutex mu_;
  TimePoint now_{};
  std::vector<Duration> sleeps_;
};

// Minimal MediaWiki action API over a fixture corpus, paging revision and
// backlink lists `page_size` at a time so continuation gets exercised.
class FakeMediaWiki : public HttpTransport {
 public:
  explicit FakeMediaWiki(std::shared_ptr<const FixtureCorpus> corpus, size_t page_size = 2,
                         Clock *clock = nullptr);

  HttpResponse Get(const std::string &path_and_query) override;

  // The next `count` requests answer with `status` (-1 throws a transport
  // error instead).
  void FailNext(int status, int count);
  std::vector<std::string> requests() const;
  std::vector<Clock::TimePoint> request_times() const;

 private:
  nlohmann::json Answer(const std::map<std::string, std::string> &params);

  std::shared_ptr<const FixtureCorpus> corpus_;
  FixtureBackend search_;
  size_t page_size_;
  Clock *clock_;
  mutable std::mutex mu_;
  int fail_status_ = 0;
  int fail_count_ = 0;
  std::vector<std::string> requests_;
  std::vector<Clock::TimePoint> times_;
};

std::map<std::string, std::string> ParseQueryString(const std::string &path_and_query);

// Deterministic synthetic topic corpus: `n` articles "Topic 0000"...; each
// links to a handful of nearby topics plus a few random ones, and some cite
// URLs. Used for the WikiMap scale checks.
std::vector<ArticleRecord> SyntheticRecords(size_t n, uint32_t seed);

// Random article-only graph: nodes "n00".., each ordered pair linked with
// probability p on the Link layer.
SemanticGraph RandomLinkGraph(std::mt19937 &rng, int n, double p);

// Betweenness by enumerating every shortest path between every ordered pair.
std::map<NodeId, double> BruteForceBetweenness(const SemanticGraph &graph, bool directed);

// nDCG computed straight from the definition for a list of ratings.
double OracleNdcg(const std::vector<int> &ratings, int n_hr, int n_r, int k, double base);

}  // namespace galaxy::testing

#endif  // GALAXY_TESTS_SUPPORT_H_
