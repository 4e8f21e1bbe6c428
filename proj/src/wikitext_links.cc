#include "galaxy/wikitext_links.h"

#include <algorithm>
#include <cctype>
#include <regex>
#include <unordered_set>

#include "galaxy/error.h"

namespace galaxy {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool StartsWithNoCase(std::string_view text, size_t pos, std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) {
      return false;
    }
  }
  return true;
}

// Namespaces whose pages are not articles, lowercased, spaces not underscores.
const std::unordered_set<std::string> &ExcludedNamespaces() {
  static const std::unordered_set<std::string> kNamespaces = {
      "file", "image", "media", "category", "wikipedia", "wp", "project",
      "template", "help", "portal", "special", "talk", "user", "user talk",
      "wikipedia talk", "file talk", "image talk", "template talk",
      "help talk", "category talk", "portal talk", "mediawiki",
      "mediawiki talk", "module", "module talk", "draft", "draft talk",
      "timedtext", "timedtext talk", "book", "book talk",
      // Interwiki prefixes for sister projects.
      "wikt", "wiktionary", "commons", "meta", "m", "w", "wikisource", "s",
      "wikiquote", "q", "wikinews", "n", "wikibooks", "b", "wikiversity", "v",
      "wikivoyage", "voy", "species", "wikispecies", "wikidata", "d", "mw",
      "simple", "c", "phab", "foundation", "wmf"};
  return kNamespaces;
}

// Language links are written with a lowercase ISO-ish code: [[fr:...]],
// [[zh-yue:...]], [[be-tarask:...]].
bool LooksLikeLanguagePrefix(std::string_view prefix) {
  static const std::regex kLanguage("[a-z]{2,3}(-[a-z]{2,8})*");
  return std::regex_match(prefix.begin(), prefix.end(), kLanguage);
}

// Blanks out <!-- comments --> and <nowiki>...</nowiki> spans, keeping a
// space in their place so neighbouring tokens stay separated.
std::string StripIgnoredSpans(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 4, "<!--") == 0) {
      size_t end = text.find("-->", i + 4);
      i = end == std::string_view::npos ? text.size() : end + 3;
      out.push_back(' ');
      continue;
    }
    if (StartsWithNoCase(text, i, "<nowiki")) {
      size_t tag_end = text.find('>', i);
      if (tag_end == std::string_view::npos) {
        out.append(text.substr(i));
        break;
      }
      if (text[tag_end - 1] == '/') {  // <nowiki/>
        i = tag_end + 1;
        out.push_back(' ');
        continue;
      }
      size_t close = i;
      bool found = false;
      for (close = tag_end + 1; close < text.size(); ++close) {
        if (StartsWithNoCase(text, close, "</nowiki>")) {
          found = true;
          break;
        }
      }
      i = found ? close + 9 : text.size();
      out.push_back(' ');
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

bool IsUrlTerminator(char c) {
  return IsSpace(c) || c == '<' || c == '>' || c == '"' || c == '[' ||
         c == ']' || c == '{' || c == '}' || c == '|';
}

// Index one past the end of a URL starting at `start`.
size_t UrlEnd(std::string_view text, size_t start) {
  size_t end = start;
  while (end < text.size() && !IsUrlTerminator(text[end])) {
    if (text[end] == '\'' && end + 1 < text.size() && text[end + 1] == '\'') {
      break;  // ''italic'' markup
    }
    ++end;
  }
  return end;
}

// Drops trailing punctuation from a bare URL. A closing parenthesis stays
// when the URL itself opened one, as in .../Foo_(bar).
std::string_view TrimBareUrl(std::string_view url) {
  static constexpr std::string_view kTrailing = ".,;:!?]";
  while (!url.empty()) {
    char c = url.back();
    if (kTrailing.find(c) != std::string_view::npos) {
      url.remove_suffix(1);
    } else if (c == ')' && url.find('(') == std::string_view::npos) {
      url.remove_suffix(1);
    } else {
      break;
    }
  }
  return url;
}

}  // namespace

std::string NormalizeTitle(std::string_view raw) {
  std::string_view view = Trim(raw);
  if (size_t hash = view.find('#'); hash != std::string_view::npos) {
    view = view.substr(0, hash);
  }
  std::string out;
  out.reserve(view.size());
  bool pending_space = false;
  for (char c : view) {
    if (c == '_' || IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  if (out.empty()) {
    throw Error(ErrorCode::kEmptyTitle, "title '" + std::string(raw) + "' is empty");
  }
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string NormalizeUrl(std::string_view raw) {
  std::string_view url = Trim(raw);
  auto fail = [&]() {
    return Error(ErrorCode::kNotAUrl, "'" + std::string(raw) + "' is not an http(s) URL");
  };
  size_t sep = url.find("://");
  if (sep == std::string_view::npos) throw fail();
  std::string scheme = Lower(url.substr(0, sep));
  if (scheme != "http" && scheme != "https") throw fail();
  std::string_view rest = url.substr(sep + 3);
  for (char c : rest) {
    if (IsSpace(c)) throw fail();
  }
  size_t authority_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, authority_end);
  std::string_view tail =
      authority_end == std::string_view::npos ? std::string_view() : rest.substr(authority_end);

  std::string userinfo;
  if (size_t at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = std::string(authority.substr(0, at + 1));
    authority = authority.substr(at + 1);
  }
  std::string_view host = authority;
  std::string_view port;
  if (!host.empty() && host.front() == '[') {
    size_t close = host.find(']');
    if (close == std::string_view::npos) throw fail();
    if (close + 1 < host.size()) {
      if (host[close + 1] != ':') throw fail();
      port = host.substr(close + 2);
    }
    host = host.substr(0, close + 1);
  } else if (size_t colon = host.rfind(':'); colon != std::string_view::npos) {
    port = host.substr(colon + 1);
    host = host.substr(0, colon);
  }
  if (host.empty()) throw fail();
  for (char c : host) {
    unsigned char u = static_cast<unsigned char>(c);
    bool ok = std::isalnum(u) || c == '-' || c == '.' || c == '_' || c == '[' ||
              c == ']' || c == ':' || u >= 0x80;
    if (!ok) throw fail();
  }
  for (char c : port) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
  }
  if ((scheme == "http" && port == "80") || (scheme == "https" && port == "443")) {
    port = {};
  }

  if (size_t hash = tail.find('#'); hash != std::string_view::npos) {
    tail = tail.substr(0, hash);
  }
  if (tail == "/") tail = {};

  std::string out = scheme + "://" + userinfo + Lower(host);
  if (!port.empty()) {
    out.push_back(':');
    out.append(port);
  }
  out.append(tail);
  return out;
}

bool IsExcludedNamespace(std::string_view title) {
  std::string_view view = Trim(title);
  if (!view.empty() && view.front() == ':') view.remove_prefix(1);
  size_t colon = view.find(':');
  if (colon == std::string_view::npos) return false;
  std::string_view prefix = Trim(view.substr(0, colon));
  std::string key = Lower(prefix);
  std::replace(key.begin(), key.end(), '_', ' ');
  return ExcludedNamespaces().count(key) > 0 || LooksLikeLanguagePrefix(prefix);
}

std::vector<std::string> ExtractInternalLinks(std::string_view wikitext) {
  const std::string text = StripIgnoredSpans(wikitext);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  size_t pos = 0;
  while ((pos = text.find("[[", pos)) != std::string::npos) {
    size_t start = pos + 2;
    // Keep scanning right after the opening brackets so that links nested in
    // image captions are still found.
    pos = start;
    size_t end = text.find_first_of("|][{}<>\n", start);
    if (end == std::string::npos) break;
    if (text[end] == ']' && text.compare(end, 2, "]]") != 0) continue;
    if (text[end] != '|' && text[end] != ']') continue;
    std::string_view target = Trim(std::string_view(text).substr(start, end - start));
    if (!target.empty() && target.front() == ':') target.remove_prefix(1);
    if (target.empty() || target.front() == '#' || target.front() == '/') continue;
    if (IsExcludedNamespace(target)) continue;
    try {
      std::string title = NormalizeTitle(target);
      if (seen.insert(title).second) out.push_back(std::move(title));
    } catch (const Error &) {
    }
  }
  return out;
}

std::vector<std::string> ExtractExternalUrls(std::string_view wikitext) {
  const std::string text = StripIgnoredSpans(wikitext);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  size_t i = 0;
  while (i < text.size()) {
    size_t scheme_len = 0;
    if (StartsWithNoCase(text, i, "http://")) {
      scheme_len = 7;
    } else if (StartsWithNoCase(text, i, "https://")) {
      scheme_len = 8;
    }
    bool boundary =
        i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) ||
                    text[i - 1] == '/' || text[i - 1] == '.');
    if (scheme_len == 0 || !boundary) {
      ++i;
      continue;
    }
    bool bracketed = i > 0 && text[i - 1] == '[';
    size_t end = UrlEnd(text, i);
    std::string_view url = std::string_view(text).substr(i, end - i);
    if (!bracketed) url = TrimBareUrl(url);
    i = std::max(end, i + scheme_len);
    if (url.size() <= scheme_len) continue;
    try {
      std::string normalized = NormalizeUrl(url);
      if (seen.insert(normalized).second) out.push_back(std::move(normalized));
    } catch (const Error &) {
    }
  }
  return out;
}

LinkExtraction ExtractLinks(std::string_view wikitext) {
  return LinkExtraction{ExtractInternalLinks(wikitext), ExtractExternalUrls(wikitext)};
}

}  // namespace galaxy
