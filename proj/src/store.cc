#include "galaxy/store.h"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "galaxy/error.h"
#include "galaxy/wikitext_links.h"

namespace galaxy {

using nlohmann::json;

namespace {

uint32_t Checksum(const std::string &payload) {
  return static_cast<uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef *>(payload.data()),
            static_cast<uInt>(payload.size())));
}

std::string Hex(uint32_t value) {
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08x", value);
  return buf;
}

}  // namespace

json CacheEntryToJson(const CacheEntry &entry) {
  return {{"title", entry.title},
          {"rev_id", entry.rev_id},
          {"timestamp", FormatTimestamp(entry.timestamp)},
          {"page_id", entry.page_id},
          {"size_bytes", entry.size_bytes},
          {"quality", QualityName(entry.assessment.quality)},
          {"importance", ImportanceName(entry.assessment.importance)},
          {"outlinks", entry.outlinks},
          {"extlinks", entry.extlinks},
          {"fetched_at", FormatTimestamp(entry.fetched_at)}};
}

CacheEntry CacheEntryFromJson(const json &doc) {
  CacheEntry entry;
  entry.title = doc.at("title").get<std::string>();
  entry.rev_id = doc.at("rev_id").get<int64_t>();
  entry.timestamp = ParseTimestamp(doc.at("timestamp").get<std::string>());
  entry.page_id = doc.at("page_id").get<int64_t>();
  entry.size_bytes = doc.at("size_bytes").get<uint64_t>();
  entry.assessment.quality = ParseQuality(doc.at("quality").get<std::string>());
  entry.assessment.importance = ParseImportance(doc.at("importance").get<std::string>());
  entry.outlinks = doc.at("outlinks").get<std::vector<std::string>>();
  entry.extlinks = doc.at("extlinks").get<std::vector<std::string>>();
  entry.fetched_at = ParseTimestamp(doc.at("fetched_at").get<std::string>());
  return entry;
}

Store::Store() = default;

Store::Store(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(*dir_);
  Replay();
  const auto log = *dir_ / "entries.log";
  fd_ = ::open(log.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw Error(ErrorCode::kCorruptStore, "cannot open " + log.string() + " for append");
  }
}

Store::~Store() {
  if (fd_ >= 0) ::close(fd_);
}

void Store::Replay() {
  const auto log = *dir_ / "entries.log";
  std::ifstream in(log, std::ios::binary);
  if (!in) return;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < content.size()) {
    ++line_no;
    size_t nl = content.find('\n', pos);
    auto corrupt = [&](const std::string &why) {
      return Error(ErrorCode::kCorruptStore,
                   log.string() + " line " + std::to_string(line_no) + ": " + why);
    };
    if (nl == std::string::npos) throw corrupt("truncated record");
    std::string line = content.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.size() < 10 || line[8] != '\t') throw corrupt("bad framing");
    std::string payload = line.substr(9);
    if (Hex(Checksum(payload)) != line.substr(0, 8)) throw corrupt("checksum mismatch");
    try {
      CacheEntry entry = CacheEntryFromJson(json::parse(payload));
      Key key{entry.title, entry.rev_id};
      entries_.emplace(std::move(key), std::move(entry));
    } catch (const std::exception &e) {
      throw corrupt(e.what());
    }
  }
}

void Store::Append(const CacheEntry &entry) {
  std::string payload = CacheEntryToJson(entry).dump();
  std::string line = Hex(Checksum(payload)) + "\t" + payload + "\n";
  size_t written = 0;
  while (written < line.size()) {
    ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      throw Error(ErrorCode::kCorruptStore, "write to store failed");
    }
    written += static_cast<size_t>(n);
  }
  if (::fsync(fd_) != 0) {
    throw Error(ErrorCode::kCorruptStore, "fsync of store failed");
  }
}

bool Store::Put(const CacheEntry &entry) {
  Key key{entry.title, entry.rev_id};
  {
    std::shared_lock lock(mu_);
    if (entries_.count(key)) return false;
  }
  std::lock_guard write_lock(write_mu_);
  {
    std::shared_lock lock(mu_);
    if (entries_.count(key)) return false;
  }
  if (fd_ >= 0) Append(entry);
  std::unique_lock lock(mu_);
  entries_.emplace(std::move(key), entry);
  return true;
}

std::optional<CacheEntry> Store::Get(const std::string &title, Timestamp as_of) const {
  std::shared_lock lock(mu_);
  std::optional<CacheEntry> best;
  for (auto it = entries_.lower_bound(Key{title, INT64_MIN});
       it != entries_.end() && it->first.first == title; ++it) {
    const CacheEntry &entry = it->second;
    if (entry.timestamp > as_of) continue;
    if (!best || entry.timestamp > best->timestamp ||
        (entry.timestamp == best->timestamp && entry.rev_id > best->rev_id)) {
      best = entry;
    }
  }
  return best;
}

std::optional<CacheEntry> Store::Find(const std::string &title, int64_t rev_id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(Key{title, rev_id});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

size_t Store::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::vector<CacheEntry> Store::Entries() const {
  std::shared_lock lock(mu_);
  std::vector<CacheEntry> out;
  out.reserve(entries_.size());
  for (const auto &[key, entry] : entries_) out.push_back(entry);
  return out;
}

FixtureCorpus Store::ExportCorpus() const {
  std::map<std::string, FixtureArticle> articles;
  for (const CacheEntry &entry : Entries()) {
    FixtureArticle &article = articles[entry.title];
    article.title = entry.title;
    article.page_id = entry.page_id;
    article.assessment = entry.assessment;
    std::ostringstream text;
    for (const auto &link : entry.outlinks) text << "[[" << link << "]]\n";
    for (const auto &url : entry.extlinks) text << "[" << url << "]\n";
    article.revisions.push_back(FixtureRevision{entry.rev_id, entry.timestamp, text.str()});
  }
  std::vector<FixtureArticle> out;
  for (auto &[title, article] : articles) out.push_back(std::move(article));
  return FixtureCorpus(std::move(out));
}

size_t Store::ImportCorpus(const FixtureCorpus &corpus, Timestamp fetched_at) {
  size_t added = 0;
  for (const auto &article : corpus.articles()) {
    for (const auto &rev : article.revisions) {
      LinkExtraction links = ExtractLinks(rev.wikitext);
      std::erase(links.internal, article.title);
      CacheEntry entry{article.title,      rev.rev_id,          rev.timestamp,
                       article.page_id,    rev.wikitext.size(), article.assessment,
                       std::move(links.internal), std::move(links.external), fetched_at};
      if (Put(entry)) ++added;
    }
  }
  return added;
}

}  // namespace galaxy
