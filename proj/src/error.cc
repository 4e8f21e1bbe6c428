#include "galaxy/error.h"

namespace galaxy {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEmptyQuery: return "EmptyQuery";
    case ErrorCode::kEmptyTitle: return "EmptyTitle";
    case ErrorCode::kNotAUrl: return "NotAUrl";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kArticleNotFound: return "ArticleNotFound";
    case ErrorCode::kNoRevisionBefore: return "NoRevisionBefore";
    case ErrorCode::kDuplicateTitle: return "DuplicateTitle";
    case ErrorCode::kSeedNotInGraph: return "SeedNotInGraph";
    case ErrorCode::kSeedNotFound: return "SeedNotFound";
    case ErrorCode::kSeedMismatch: return "SeedMismatch";
    case ErrorCode::kInvalidLabel: return "InvalidLabel";
    case ErrorCode::kNoRelevantItems: return "NoRelevantItems";
    case ErrorCode::kCorruptStore: return "CorruptStore";
  }
  return "Unknown";
}

}  // namespace galaxy
