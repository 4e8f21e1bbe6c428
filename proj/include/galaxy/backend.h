#ifndef GALAXY_BACKEND_H_
#define GALAXY_BACKEND_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "galaxy/article.h"
#include "galaxy/time_util.h"

namespace galaxy {

// Metadata of one page: identity, current assessment and the full revision
// history in ascending rev_id order.
struct PageInfo {
  std::string title;
  int64_t page_id = 0;
  AssessmentRating assessment;
  std::vector<RevisionStamp> revisions;
};

// Raw data access against a wiki. Implementations must be safe to call from
// several threads at once. Errors are reported as galaxy::Error with
// kArticleNotFound or kBackendUnavailable.
class ArticleBackend {
 public:
  virtual ~ArticleBackend() = default;

  // Titles in the backend's relevance order, at most `limit`.
  virtual std::vector<std::string> Search(std::string_view term, size_t limit) = 0;
  virtual PageInfo FetchPageInfo(const std::string &title) = 0;
  virtual std::string FetchRevisionText(const std::string &title, int64_t rev_id) = 0;
  // Number of distinct articles anywhere in the wiki linking to `title`.
  virtual uint64_t FetchBacklinkCount(const std::string &title) = 0;
  // The backend's notion of "now": wall clock for a live wiki, newest
  // revision for a fixture corpus.
  virtual Timestamp ReferenceTime() = 0;
};

}  // namespace galaxy

#endif  // GALAXY_BACKEND_H_
