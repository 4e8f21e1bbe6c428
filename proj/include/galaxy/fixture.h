#ifndef GALAXY_FIXTURE_H_
#define GALAXY_FIXTURE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "galaxy/backend.h"
#include "json.hpp"

namespace galaxy {

struct FixtureRevision {
  int64_t rev_id = 0;
  Timestamp timestamp;
  std::string wikitext;
};

struct FixtureArticle {
  std::string title;
  int64_t page_id = 0;
  AssessmentRating assessment;
  std::vector<FixtureRevision> revisions;
};

nlohmann::json FixtureArticleToJson(const FixtureArticle &article);
FixtureArticle FixtureArticleFromJson(const nlohmann::json &doc);

// An offline article corpus: one JSON document per article in a directory.
//
//   {"title": "Abortion", "page_id": 766,
//    "assessment": {"quality": "B", "importance": "Top"},
//    "revisions": [{"rev_id": 1, "timestamp": "2010-01-01T00:00:00Z",
//                   "wikitext": "..."}]}
//
// Titles must be canonical and unique; rev_ids must increase with time.
class FixtureCorpus {
 public:
  explicit FixtureCorpus(std::vector<FixtureArticle> articles);

  static FixtureCorpus LoadDirectory(const std::filesystem::path &dir);
  // Writes one file per article; file names are derived from page_id.
  void SaveDirectory(const std::filesystem::path &dir) const;

  const FixtureArticle *Find(const std::string &title) const;
  const std::vector<FixtureArticle> &articles() const { return articles_; }
  Timestamp LatestTimestamp() const { return latest_; }

 private:
  std::vector<FixtureArticle> articles_;
  std::map<std::string, size_t> by_title_;
  Timestamp latest_{};
};

// ArticleBackend over a FixtureCorpus. Backlink counts and search use each
// article's newest revision.
class FixtureBackend : public ArticleBackend {
 public:
  explicit FixtureBackend(std::shared_ptr<const FixtureCorpus> corpus);

  std::vector<std::string> Search(std::string_view term, size_t limit) override;
  PageInfo FetchPageInfo(const std::string &title) override;
  std::string FetchRevisionText(const std::string &title, int64_t rev_id) override;
  uint64_t FetchBacklinkCount(const std::string &title) override;
  Timestamp ReferenceTime() override { return corpus_->LatestTimestamp(); }

  const FixtureCorpus &corpus() const { return *corpus_; }

 private:
  const FixtureArticle &Require(const std::string &title) const;

  std::shared_ptr<const FixtureCorpus> corpus_;
  std::map<std::string, uint64_t> backlinks_;
};

}  // namespace galaxy

#endif  // GALAXY_FIXTURE_H_
