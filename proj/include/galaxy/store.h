#ifndef GALAXY_STORE_H_
#define GALAXY_STORE_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "galaxy/article.h"
#include "galaxy/fixture.h"

namespace galaxy {

// Links of one article revision, as fetched. Entries are immutable and keyed
// by (title, rev_id).
struct CacheEntry {
  std::string title;
  int64_t rev_id = 0;
  Timestamp timestamp;
  int64_t page_id = 0;
  uint64_t size_bytes = 0;
  AssessmentRating assessment;
  std::vector<std::string> outlinks;
  std::vector<std::string> extlinks;
  Timestamp fetched_at;

  bool operator==(const CacheEntry &) const = default;
};

nlohmann::json CacheEntryToJson(const CacheEntry &entry);
CacheEntry CacheEntryFromJson(const nlohmann::json &doc);

// Append-only revision cache. With a directory, every entry is written to
// <dir>/entries.log as one line "<crc32 hex>\t<json>\n" and fsync'ed before
// Put returns; opening the directory replays the log and throws
// Error(kCorruptStore) on any checksum or framing mismatch. Without a
// directory the store lives in memory only.
class Store {
 public:
  Store();
  explicit Store(std::filesystem::path dir);
  ~Store();

  Store(const Store &) = delete;
  Store &operator=(const Store &) = delete;

  // Returns false if the key was already present; the first write wins.
  bool Put(const CacheEntry &entry);

  // Newest entry for `title` whose revision timestamp is <= as_of.
  std::optional<CacheEntry> Get(const std::string &title, Timestamp as_of) const;
  std::optional<CacheEntry> Find(const std::string &title, int64_t rev_id) const;

  size_t size() const;
  std::vector<CacheEntry> Entries() const;

  // Portable fixture corpus rebuilt from cached revisions. Wikitext is
  // regenerated from the stored links, so re-extracting it yields the same
  // link lists.
  FixtureCorpus ExportCorpus() const;
  // Caches every revision of every article in `corpus`. Returns the number of
  // new entries.
  size_t ImportCorpus(const FixtureCorpus &corpus, Timestamp fetched_at);

 private:
  using Key = std::pair<std::string, int64_t>;

  void Replay();
  void Append(const CacheEntry &entry);

  std::optional<std::filesystem::path> dir_;
  int fd_ = -1;
  mutable std::shared_mutex mu_;
  std::mutex write_mu_;
  std::map<Key, CacheEntry> entries_;
};

}  // namespace galaxy

#endif  // GALAXY_STORE_H_
