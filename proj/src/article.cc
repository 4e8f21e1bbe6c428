#include "galaxy/article.h"

#include <array>
#include <cctype>
#include <string>

#include "galaxy/error.h"

namespace galaxy {
namespace {

constexpr std::array<std::string_view, 10> kQualityNames = {
    "Unrated", "List", "Stub", "Start", "C", "B", "GA", "A", "FL", "FA"};
constexpr std::array<std::string_view, 5> kImportanceNames = {
    "Unrated", "Low", "Mid", "High", "Top"};

bool EqualsNoCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

template <typename Enum, size_t N>
bool Lookup(const std::array<std::string_view, N> &names, std::string_view name,
            Enum *out) {
  for (size_t i = 0; i < N; ++i) {
    if (EqualsNoCase(names[i], name)) {
      *out = static_cast<Enum>(i);
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view QualityName(QualityClass q) {
  return kQualityNames[static_cast<size_t>(q)];
}

std::string_view ImportanceName(ImportanceClass i) {
  return kImportanceNames[static_cast<size_t>(i)];
}

QualityClass ParseQuality(std::string_view name) {
  QualityClass q;
  if (!Lookup(kQualityNames, name, &q)) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown quality class '" + std::string(name) + "'");
  }
  return q;
}

ImportanceClass ParseImportance(std::string_view name) {
  ImportanceClass i;
  if (!Lookup(kImportanceNames, name, &i)) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown importance class '" + std::string(name) + "'");
  }
  return i;
}

QualityClass ParseQualityLenient(std::string_view name) {
  QualityClass q = QualityClass::kUnrated;
  Lookup(kQualityNames, name, &q);
  return q;
}

ImportanceClass ParseImportanceLenient(std::string_view name) {
  ImportanceClass i = ImportanceClass::kUnrated;
  Lookup(kImportanceNames, name, &i);
  return i;
}

}  // namespace galaxy
