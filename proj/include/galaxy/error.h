#ifndef GALAXY_ERROR_H_
#define GALAXY_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace galaxy {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidConfig,
  kEmptyQuery,
  kEmptyTitle,
  kNotAUrl,
  kBackendUnavailable,
  kArticleNotFound,
  kNoRevisionBefore,
  kDuplicateTitle,
  kSeedNotInGraph,
  kSeedNotFound,
  kSeedMismatch,
  kInvalidLabel,
  kNoRelevantItems,
  kCorruptStore,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by this library carries one of the codes above so
// callers (CLI exit codes, HTTP statuses) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  // The message without the code prefix.
  const std::string &message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace galaxy

#endif  // GALAXY_ERROR_H_
