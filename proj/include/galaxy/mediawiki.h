#ifndef GALAXY_MEDIAWIKI_H_
#define GALAXY_MEDIAWIKI_H_

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "galaxy/backend.h"
#include "json.hpp"

namespace galaxy {

class Clock {
 public:
  using Duration = std::chrono::nanoseconds;
  using TimePoint = std::chrono::time_point<std::chrono::steady_clock, Duration>;

  virtual ~Clock() = default;
  virtual TimePoint Now() = 0;
  virtual void SleepUntil(TimePoint t) = 0;
};

class SteadyClock : public Clock {
 public:
  TimePoint Now() override;
  void SleepUntil(TimePoint t) override;
};

// Admits at most `per_second` requests per second by spacing admissions
// 1/per_second apart. Admission is serialized across threads.
class RateLimiter {
 public:
  RateLimiter(double per_second, Clock &clock);

  // Blocks until the caller may issue a request; returns the admission time.
  Clock::TimePoint Acquire();
  Clock &clock() { return clock_; }

 private:
  Clock::Duration interval_;
  Clock &clock_;
  std::mutex mu_;
  Clock::TimePoint next_{};
  bool started_ = false;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// GET against one fixed host. Throws Error(kBackendUnavailable) when the
// request could not be completed at all.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse Get(const std::string &path_and_query) = 0;
};

// cpp-httplib transport, e.g. for "https://en.wikipedia.org".
class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(std::string base_url, std::string user_agent = "galaxysearch/1.0");
  HttpResponse Get(const std::string &path_and_query) override;

 private:
  std::string base_url_;
  std::string user_agent_;
};

std::string UrlEncode(std::string_view value);

struct MediaWikiOptions {
  std::string api_path = "/w/api.php";
  int max_retries = 4;
  std::chrono::milliseconds initial_backoff{500};
};

// ArticleBackend over the MediaWiki action API. Every request passes through
// the shared RateLimiter; HTTP 429 and 5xx responses are retried with
// exponential backoff before giving up with kBackendUnavailable.
//
// Requests used:
//   list=search                                   Search
//   prop=revisions|pageassessments (rvlimit=max)  FetchPageInfo
//   prop=revisions&revids=...&rvprop=content      FetchRevisionText
//   prop=info + list=backlinks (bllimit=max)      FetchBacklinkCount
class MediaWikiBackend : public ArticleBackend {
 public:
  MediaWikiBackend(std::shared_ptr<HttpTransport> transport,
                   std::shared_ptr<RateLimiter> limiter, MediaWikiOptions options = {});

  std::vector<std::string> Search(std::string_view term, size_t limit) override;
  PageInfo FetchPageInfo(const std::string &title) override;
  std::string FetchRevisionText(const std::string &title, int64_t rev_id) override;
  uint64_t FetchBacklinkCount(const std::string &title) override;
  Timestamp ReferenceTime() override;

 private:
  nlohmann::json Query(const std::map<std::string, std::string> &params);

  std::shared_ptr<HttpTransport> transport_;
  std::shared_ptr<RateLimiter> limiter_;
  MediaWikiOptions options_;
};

}  // namespace galaxy

#endif  // GALAXY_MEDIAWIKI_H_
