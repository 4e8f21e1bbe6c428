#include "galaxy/mediawiki.h"

#include <algorithm>
#include <set>
#include <thread>

#include "httplib.h"

#include "galaxy/error.h"

namespace galaxy {

using nlohmann::json;

Clock::TimePoint SteadyClock::Now() {
  return std::chrono::time_point_cast<Duration>(std::chrono::steady_clock::now());
}

void SteadyClock::SleepUntil(TimePoint t) { std::this_thread::sleep_until(t); }

RateLimiter::RateLimiter(double per_second, Clock &clock) : clock_(clock) {
  if (!(per_second > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "rate limit must be positive");
  }
  interval_ = std::chrono::duration_cast<Clock::Duration>(
      std::chrono::duration<double>(1.0 / per_second));
}

Clock::TimePoint RateLimiter::Acquire() {
  std::lock_guard lock(mu_);
  Clock::TimePoint now = clock_.Now();
  Clock::TimePoint admit = started_ ? std::max(now, next_) : now;
  if (admit > now) clock_.SleepUntil(admit);
  started_ = true;
  next_ = admit + interval_;
  return admit;
}

HttplibTransport::HttplibTransport(std::string base_url, std::string user_agent)
    : base_url_(std::move(base_url)), user_agent_(std::move(user_agent)) {}

HttpResponse HttplibTransport::Get(const std::string &path_and_query) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  client.set_follow_location(true);
  httplib::Headers headers = {{"User-Agent", user_agent_}};
  auto result = client.Get(path_and_query, headers);
  if (!result) {
    throw Error(ErrorCode::kBackendUnavailable,
                "GET " + base_url_ + path_and_query + " failed: " +
                    httplib::to_string(result.error()));
  }
  return HttpResponse{result->status, result->body};
}

std::string UrlEncode(std::string_view value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

MediaWikiBackend::MediaWikiBackend(std::shared_ptr<HttpTransport> transport,
                                   std::shared_ptr<RateLimiter> limiter,
                                   MediaWikiOptions options)
    : transport_(std::move(transport)), limiter_(std::move(limiter)),
      options_(std::move(options)) {}

json MediaWikiBackend::Query(const std::map<std::string, std::string> &params) {
  std::map<std::string, std::string> all = params;
  all["action"] = "query";
  all["format"] = "json";
  all["formatversion"] = "2";
  std::string url = options_.api_path;
  char sep = '?';
  for (const auto &[key, value] : all) {
    url += sep;
    url += UrlEncode(key) + "=" + UrlEncode(value);
    sep = '&';
  }

  std::string last_problem;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    limiter_->Acquire();
    HttpResponse response;
    try {
      response = transport_->Get(url);
    } catch (const Error &e) {
      last_problem = e.what();
      response.status = -1;
    }
    if (response.status == 200) {
      json doc = json::parse(response.body, nullptr, false);
      if (doc.is_discarded()) {
        throw Error(ErrorCode::kBackendUnavailable, "unparseable API response for " + url);
      }
      if (doc.contains("error")) {
        throw Error(ErrorCode::kBackendUnavailable,
                    "API error " + doc["error"].value("code", std::string("?")) + " for " + url);
      }
      return doc;
    }
    if (response.status == 429 || response.status >= 500 || response.status == -1) {
      if (response.status != -1) last_problem = "HTTP " + std::to_string(response.status);
      if (attempt < options_.max_retries) {
        Clock &clock = limiter_->clock();
        clock.SleepUntil(clock.Now() + options_.initial_backoff * (1 << attempt));
      }
      continue;
    }
    throw Error(ErrorCode::kBackendUnavailable,
                "HTTP " + std::to_string(response.status) + " for " + url);
  }
  throw Error(ErrorCode::kBackendUnavailable,
              "giving up on " + url + " after " + std::to_string(options_.max_retries + 1) +
                  " attempts: " + last_problem);
}

namespace {

const json &SinglePage(const json &doc, const std::string &title) {
  const json &pages = doc.at("query").at("pages");
  if (!pages.is_array() || pages.empty()) {
    throw Error(ErrorCode::kBackendUnavailable, "API response without pages");
  }
  const json &page = pages.front();
  if (page.value("missing", false) || page.value("invalid", false)) {
    throw Error(ErrorCode::kArticleNotFound, "no article '" + title + "'");
  }
  return page;
}

// Carries the "continue" block of a response into the next request.
bool Continue(const json &doc, std::map<std::string, std::string> &params) {
  if (!doc.contains("continue")) return false;
  for (const auto &[key, value] : doc["continue"].items()) {
    params[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  return true;
}

}  // namespace

std::vector<std::string> MediaWikiBackend::Search(std::string_view term, size_t limit) {
  json doc = Query({{"list", "search"},
                    {"srsearch", std::string(term)},
                    {"srnamespace", "0"},
                    {"srprop", ""},
                    {"srlimit", std::to_string(std::min<size_t>(limit, 500))}});
  std::vector<std::string> out;
  try {
    for (const json &hit : doc.at("query").at("search")) {
      out.push_back(hit.at("title").get<std::string>());
      if (out.size() == limit) break;
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kBackendUnavailable, std::string("bad search response: ") + e.what());
  }
  return out;
}

PageInfo MediaWikiBackend::FetchPageInfo(const std::string &title) {
  std::map<std::string, std::string> params = {{"prop", "revisions|pageassessments"},
                                               {"titles", title},
                                               {"rvprop", "ids|timestamp|size"},
                                               {"rvlimit", "max"},
                                               {"rvdir", "newer"},
                                               {"palimit", "max"}};
  PageInfo info;
  info.title = title;
  try {
    while (true) {
      json doc = Query(params);
      const json &page = SinglePage(doc, title);
      info.page_id = page.at("pageid").get<int64_t>();
      info.title = page.at("title").get<std::string>();
      if (page.contains("revisions")) {
        for (const json &rev : page["revisions"]) {
          info.revisions.push_back(RevisionStamp{rev.at("revid").get<int64_t>(),
                                                 ParseTimestamp(rev.at("timestamp").get<std::string>()),
                                                 rev.value("size", uint64_t{0})});
        }
      }
      if (page.contains("pageassessments") && page["pageassessments"].is_object()) {
        for (const auto &[project, rating] : page["pageassessments"].items()) {
          info.assessment.quality = std::max(
              info.assessment.quality, ParseQualityLenient(rating.value("class", std::string())));
          info.assessment.importance =
              std::max(info.assessment.importance,
                       ParseImportanceLenient(rating.value("importance", std::string())));
        }
      }
      if (!Continue(doc, params)) break;
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kBackendUnavailable, std::string("bad page response: ") + e.what());
  }
  std::sort(info.revisions.begin(), info.revisions.end(),
            [](const RevisionStamp &a, const RevisionStamp &b) { return a.rev_id < b.rev_id; });
  return info;
}

std::string MediaWikiBackend::FetchRevisionText(const std::string &title, int64_t rev_id) {
  json doc = Query({{"prop", "revisions"},
                    {"revids", std::to_string(rev_id)},
                    {"rvprop", "content"},
                    {"rvslots", "main"}});
  try {
    if (doc.at("query").contains("badrevids")) {
      throw Error(ErrorCode::kArticleNotFound,
                  "article '" + title + "' has no revision " + std::to_string(rev_id));
    }
    const json &page = SinglePage(doc, title);
    return page.at("revisions").at(0).at("slots").at("main").at("content").get<std::string>();
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kBackendUnavailable, std::string("bad revision response: ") + e.what());
  }
}

uint64_t MediaWikiBackend::FetchBacklinkCount(const std::string &title) {
  std::map<std::string, std::string> params = {{"prop", "info"},
                                               {"titles", title},
                                               {"list", "backlinks"},
                                               {"bltitle", title},
                                               {"blnamespace", "0"},
                                               {"blfilterredir", "nonredirects"},
                                               {"bllimit", "max"}};
  std::set<std::string> linking;
  try {
    bool first = true;
    while (true) {
      json doc = Query(params);
      if (first) SinglePage(doc, title);
      first = false;
      if (doc.at("query").contains("backlinks")) {
        for (const json &link : doc["query"]["backlinks"]) {
          std::string from = link.at("title").get<std::string>();
          if (from != title) linking.insert(std::move(from));
        }
      }
      if (!Continue(doc, params)) break;
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kBackendUnavailable, std::string("bad backlinks response: ") + e.what());
  }
  return linking.size();
}

Timestamp MediaWikiBackend::ReferenceTime() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace galaxy
