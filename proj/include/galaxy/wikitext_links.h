#ifndef GALAXY_WIKITEXT_LINKS_H_
#define GALAXY_WIKITEXT_LINKS_H_

#include <string>
#include <string_view>
#include <vector>

namespace galaxy {

// Links found in one revision's wikitext. Both lists are deduplicated and
// keep first-occurrence order.
struct LinkExtraction {
  std::vector<std::string> internal;
  std::vector<std::string> external;

  bool operator==(const LinkExtraction &) const = default;
};

// Canonical article title: underscores become spaces, whitespace runs are
// collapsed, the anchor fragment is dropped and the first letter is
// uppercased. Throws Error(kEmptyTitle) when nothing is left.
std::string NormalizeTitle(std::string_view raw);

// Lowercases scheme and host, drops default ports, fragments and a bare
// trailing "/". Throws Error(kNotAUrl) unless raw is an http(s) URL.
std::string NormalizeUrl(std::string_view raw);

// Targets of [[...]] links in the article namespace. Comments and <nowiki>
// spans are ignored; templates are not expanded.
std::vector<std::string> ExtractInternalLinks(std::string_view wikitext);

// Bracketed [http://... label] links and bare http(s) URLs, normalized.
std::vector<std::string> ExtractExternalUrls(std::string_view wikitext);

LinkExtraction ExtractLinks(std::string_view wikitext);

// True when the title lives outside the article namespace (File:, Category:,
// interwiki prefixes and so on).
bool IsExcludedNamespace(std::string_view title);

}  // namespace galaxy

#endif  // GALAXY_WIKITEXT_LINKS_H_
