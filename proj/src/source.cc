#include "galaxy/source.h"

#include <algorithm>
#include <chrono>

#include "galaxy/error.h"
#include "galaxy/wikitext_links.h"

namespace galaxy {
namespace {

void RequireCanonical(const std::string &title) {
  if (NormalizeTitle(title) != title) {
    throw Error(ErrorCode::kInvalidArgument, "title '" + title + "' is not canonical");
  }
}

}  // namespace

ArticleSource::ArticleSource(std::shared_ptr<ArticleBackend> backend,
                             std::shared_ptr<Store> store)
    : backend_(std::move(backend)), store_(std::move(store)) {
  if (!store_) store_ = std::make_shared<Store>();
}

template <typename Key, typename Value, typename Fetch>
Value ArticleSource::Once(std::map<Key, std::shared_future<Value>> &cache, const Key &key,
                          Fetch fetch) {
  std::promise<Value> promise;
  std::shared_future<Value> future;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto it = cache.find(key);
    if (it != cache.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      cache.emplace(key, future);
      owner = true;
    }
  }
  if (owner) {
    try {
      promise.set_value(fetch());
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard lock(mu_);
      cache.erase(key);
    }
  }
  return future.get();
}

std::vector<std::string> ArticleSource::SearchSeeds(std::string_view term, size_t limit) {
  auto first = term.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw Error(ErrorCode::kEmptyQuery, "search term is empty");
  }
  auto last = term.find_last_not_of(" \t\r\n");
  term = term.substr(first, last - first + 1);
  if (limit == 0) throw Error(ErrorCode::kInvalidArgument, "limit must be positive");
  std::vector<std::string> out;
  for (const auto &raw : backend_->Search(term, limit)) {
    std::string title = NormalizeTitle(raw);
    if (std::find(out.begin(), out.end(), title) == out.end()) out.push_back(title);
    if (out.size() == limit) break;
  }
  return out;
}

std::shared_ptr<const PageInfo> ArticleSource::PageInfoFor(const std::string &title) {
  return Once(page_infos_, title, [&]() -> std::shared_ptr<const PageInfo> {
    auto info = std::make_shared<PageInfo>(backend_->FetchPageInfo(title));
    info->title = title;
    std::sort(info->revisions.begin(), info->revisions.end(),
              [](const RevisionStamp &a, const RevisionStamp &b) { return a.rev_id < b.rev_id; });
    return info;
  });
}

CacheEntry ArticleSource::RevisionLinks(const PageInfo &info, const RevisionStamp &rev) {
  const std::string &title = info.title;
  return Once(revisions_, std::make_pair(title, rev.rev_id), [&]() -> CacheEntry {
    if (auto cached = store_->Find(title, rev.rev_id)) return *cached;
    std::string text = backend_->FetchRevisionText(title, rev.rev_id);
    LinkExtraction links = ExtractLinks(text);
    std::erase(links.internal, title);
    CacheEntry entry{title,
                     rev.rev_id,
                     rev.timestamp,
                     info.page_id,
                     rev.size_bytes,
                     info.assessment,
                     std::move(links.internal),
                     std::move(links.external),
                     std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now())};
    store_->Put(entry);
    // Another process may have raced us to the same key; its entry wins.
    return store_->Find(title, rev.rev_id).value_or(entry);
  });
}

ArticleRecord ArticleSource::FetchArticle(const std::string &title,
                                          std::optional<Timestamp> as_of) {
  RequireCanonical(title);
  auto info = PageInfoFor(title);
  const auto &revs = info->revisions;
  if (revs.empty()) {
    throw Error(ErrorCode::kArticleNotFound, "article '" + title + "' has no revisions");
  }
  auto chosen = revs.end();
  if (!as_of) {
    chosen = std::prev(revs.end());
  } else {
    for (auto it = revs.begin(); it != revs.end(); ++it) {
      if (it->timestamp <= *as_of) chosen = it;
    }
    if (chosen == revs.end()) {
      throw Error(ErrorCode::kNoRevisionBefore,
                  "article '" + title + "' has no revision at or before " +
                      FormatTimestamp(*as_of));
    }
  }

  CacheEntry entry = RevisionLinks(*info, *chosen);
  ArticleRecord record;
  record.title = title;
  record.page_id = info->page_id;
  record.as_of = chosen->timestamp;
  record.outlinks = std::move(entry.outlinks);
  record.extlinks = std::move(entry.extlinks);
  record.assessment = info->assessment;
  record.revisions.assign(revs.begin(), std::next(chosen));
  return record;
}

uint64_t ArticleSource::FetchBacklinkCount(const std::string &title) {
  RequireCanonical(title);
  return Once(backlinks_, title, [&] { return backend_->FetchBacklinkCount(title); });
}

uint64_t ArticleSource::FetchRevisionCount(const std::string &title, const TimeWindow &window) {
  RequireCanonical(title);
  if (!(window.start < window.end)) {
    throw Error(ErrorCode::kInvalidArgument, "revision window must have start < end");
  }
  auto info = PageInfoFor(title);
  return static_cast<uint64_t>(std::count_if(
      info->revisions.begin(), info->revisions.end(),
      [&](const RevisionStamp &rev) { return window.Contains(rev.timestamp); }));
}

Timestamp ArticleSource::ReferenceTime() { return backend_->ReferenceTime(); }

}  // namespace galaxy
