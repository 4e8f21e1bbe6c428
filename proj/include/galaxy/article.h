#ifndef GALAXY_ARTICLE_H_
#define GALAXY_ARTICLE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "galaxy/time_util.h"

namespace galaxy {

// WikiProject quality classes, lowest to highest. Unrated sorts below List.
enum class QualityClass { kUnrated, kList, kStub, kStart, kC, kB, kGA, kA, kFL, kFA };

enum class ImportanceClass { kUnrated, kLow, kMid, kHigh, kTop };

std::string_view QualityName(QualityClass q);
std::string_view ImportanceName(ImportanceClass i);

// Strict parsers throw Error(kInvalidArgument) on unknown names. The lenient
// variants map anything unrecognised ("Redirect", "NA", "") to Unrated, which
// is what the live assessment data needs.
QualityClass ParseQuality(std::string_view name);
ImportanceClass ParseImportance(std::string_view name);
QualityClass ParseQualityLenient(std::string_view name);
ImportanceClass ParseImportanceLenient(std::string_view name);

struct AssessmentRating {
  QualityClass quality = QualityClass::kUnrated;
  ImportanceClass importance = ImportanceClass::kUnrated;

  bool operator==(const AssessmentRating &) const = default;
};

struct RevisionStamp {
  int64_t rev_id = 0;
  Timestamp timestamp;
  uint64_t size_bytes = 0;

  bool operator==(const RevisionStamp &) const = default;
};

// One article as of one revision. `as_of` is the timestamp of the revision
// the links were taken from; `revisions` lists the history up to and
// including it.
struct ArticleRecord {
  std::string title;
  int64_t page_id = 0;
  Timestamp as_of;
  std::vector<std::string> outlinks;
  std::vector<std::string> extlinks;
  AssessmentRating assessment;
  std::vector<RevisionStamp> revisions;

  bool operator==(const ArticleRecord &) const = default;
};

}  // namespace galaxy

#endif  // GALAXY_ARTICLE_H_
