#ifndef GALAXY_SOURCE_H_
#define GALAXY_SOURCE_H_

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "galaxy/article.h"
#include "galaxy/backend.h"
#include "galaxy/store.h"

namespace galaxy {

// Article data access for the ranking and timeline pipelines. Sits between an
// ArticleBackend (live wiki or fixture corpus) and a Store so that each page's
// metadata and each revision's links are requested from the backend once.
// Safe to share between threads.
class ArticleSource {
 public:
  ArticleSource(std::shared_ptr<ArticleBackend> backend, std::shared_ptr<Store> store);

  // Throws kEmptyQuery for blank terms.
  std::vector<std::string> SearchSeeds(std::string_view term, size_t limit);

  // Record built from the newest revision at or before `as_of` (the latest
  // revision when absent). Throws kArticleNotFound or kNoRevisionBefore.
  ArticleRecord FetchArticle(const std::string &title,
                             std::optional<Timestamp> as_of = std::nullopt);

  uint64_t FetchBacklinkCount(const std::string &title);

  // Revisions with window.start <= timestamp < window.end.
  uint64_t FetchRevisionCount(const std::string &title, const TimeWindow &window);

  Timestamp ReferenceTime();

  const Store &store() const { return *store_; }

 private:
  std::shared_ptr<const PageInfo> PageInfoFor(const std::string &title);
  CacheEntry RevisionLinks(const PageInfo &info, const RevisionStamp &rev);

  // Runs `fetch` once per key even under concurrent callers; later callers
  // wait for the first. Failed fetches are forgotten so they can be retried.
  template <typename Key, typename Value, typename Fetch>
  Value Once(std::map<Key, std::shared_future<Value>> &cache, const Key &key, Fetch fetch);

  std::shared_ptr<ArticleBackend> backend_;
  std::shared_ptr<Store> store_;
  std::mutex mu_;
  std::map<std::string, std::shared_future<std::shared_ptr<const PageInfo>>> page_infos_;
  std::map<std::pair<std::string, int64_t>, std::shared_future<CacheEntry>> revisions_;
  std::map<std::string, std::shared_future<uint64_t>> backlinks_;
};

}  // namespace galaxy

#endif  // GALAXY_SOURCE_H_
