#include "galaxy/fixture.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "galaxy/error.h"
#include "galaxy/wikitext_links.h"

namespace galaxy {

using nlohmann::json;

json FixtureArticleToJson(const FixtureArticle &article) {
  json revisions = json::array();
  for (const auto &rev : article.revisions) {
    revisions.push_back({{"rev_id", rev.rev_id},
                         {"timestamp", FormatTimestamp(rev.timestamp)},
                         {"wikitext", rev.wikitext}});
  }
  return {{"title", article.title},
          {"page_id", article.page_id},
          {"assessment",
           {{"quality", QualityName(article.assessment.quality)},
            {"importance", ImportanceName(article.assessment.importance)}}},
          {"revisions", std::move(revisions)}};
}

FixtureArticle FixtureArticleFromJson(const json &doc) {
  FixtureArticle article;
  try {
    article.title = doc.at("title").get<std::string>();
    article.page_id = doc.at("page_id").get<int64_t>();
    if (doc.contains("assessment")) {
      const json &a = doc.at("assessment");
      article.assessment.quality = ParseQuality(a.value("quality", "Unrated"));
      article.assessment.importance = ParseImportance(a.value("importance", "Unrated"));
    }
    for (const json &r : doc.at("revisions")) {
      article.revisions.push_back(FixtureRevision{
          r.at("rev_id").get<int64_t>(),
          ParseTimestamp(r.at("timestamp").get<std::string>()),
          r.at("wikitext").get<std::string>()});
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed fixture document: ") + e.what());
  }
  return article;
}

FixtureCorpus::FixtureCorpus(std::vector<FixtureArticle> articles)
    : articles_(std::move(articles)) {
  for (size_t i = 0; i < articles_.size(); ++i) {
    auto &article = articles_[i];
    if (NormalizeTitle(article.title) != article.title) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixture title '" + article.title + "' is not canonical");
    }
    if (article.page_id <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixture '" + article.title + "' needs a positive page_id");
    }
    std::sort(article.revisions.begin(), article.revisions.end(),
              [](const FixtureRevision &a, const FixtureRevision &b) {
                return a.rev_id < b.rev_id;
              });
    for (size_t r = 0; r < article.revisions.size(); ++r) {
      const auto &rev = article.revisions[r];
      if (rev.rev_id <= 0 ||
          (r > 0 && (rev.rev_id == article.revisions[r - 1].rev_id ||
                     rev.timestamp < article.revisions[r - 1].timestamp))) {
        throw Error(ErrorCode::kInvalidArgument,
                    "fixture '" + article.title +
                        "' has revisions out of order or with bad ids");
      }
      latest_ = std::max(latest_, rev.timestamp);
    }
    if (!by_title_.emplace(article.title, i).second) {
      throw Error(ErrorCode::kDuplicateTitle, "fixture title '" + article.title +
                                                  "' appears twice");
    }
  }
}

FixtureCorpus FixtureCorpus::LoadDirectory(const std::filesystem::path &dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kBackendUnavailable,
                "fixture directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<FixtureArticle> articles;
  for (const auto &file : files) {
    std::ifstream in(file);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cannot parse " + file.string() + ": " + e.what());
    }
    articles.push_back(FixtureArticleFromJson(doc));
  }
  return FixtureCorpus(std::move(articles));
}

void FixtureCorpus::SaveDirectory(const std::filesystem::path &dir) const {
  std::filesystem::create_directories(dir);
  for (const auto &article : articles_) {
    std::ofstream out(dir / (std::to_string(article.page_id) + ".json"));
    out << FixtureArticleToJson(article).dump(2) << "\n";
    if (!out) {
      throw Error(ErrorCode::kInvalidArgument, "cannot write to " + dir.string());
    }
  }
}

const FixtureArticle *FixtureCorpus::Find(const std::string &title) const {
  auto it = by_title_.find(title);
  return it == by_title_.end() ? nullptr : &articles_[it->second];
}

FixtureBackend::FixtureBackend(std::shared_ptr<const FixtureCorpus> corpus)
    : corpus_(std::move(corpus)) {
  for (const auto &article : corpus_->articles()) {
    backlinks_.emplace(article.title, 0);
  }
  for (const auto &article : corpus_->articles()) {
    if (article.revisions.empty()) continue;
    for (const auto &target : ExtractInternalLinks(article.revisions.back().wikitext)) {
      if (target == article.title) continue;
      ++backlinks_[target];
    }
  }
}

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<std::string> FixtureBackend::Search(std::string_view term, size_t limit) {
  const std::string needle = Lower(term);
  // (rank, title): exact title, title prefix, title substring, body mention.
  std::vector<std::pair<int, std::string>> hits;
  for (const auto &article : corpus_->articles()) {
    const std::string title = Lower(article.title);
    int rank = -1;
    if (title == needle) {
      rank = 0;
    } else if (title.rfind(needle, 0) == 0) {
      rank = 1;
    } else if (title.find(needle) != std::string::npos) {
      rank = 2;
    } else if (!article.revisions.empty() &&
               Lower(article.revisions.back().wikitext).find(needle) != std::string::npos) {
      rank = 3;
    }
    if (rank >= 0) hits.emplace_back(rank, article.title);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  for (size_t i = 0; i < hits.size() && out.size() < limit; ++i) {
    out.push_back(hits[i].second);
  }
  return out;
}

const FixtureArticle &FixtureBackend::Require(const std::string &title) const {
  const FixtureArticle *article = corpus_->Find(title);
  if (article == nullptr) {
    throw Error(ErrorCode::kArticleNotFound, "no article '" + title + "'");
  }
  return *article;
}

PageInfo FixtureBackend::FetchPageInfo(const std::string &title) {
  const FixtureArticle &article = Require(title);
  PageInfo info{article.title, article.page_id, article.assessment, {}};
  for (const auto &rev : article.revisions) {
    info.revisions.push_back(RevisionStamp{rev.rev_id, rev.timestamp, rev.wikitext.size()});
  }
  return info;
}

std::string FixtureBackend::FetchRevisionText(const std::string &title, int64_t rev_id) {
  const FixtureArticle &article = Require(title);
  for (const auto &rev : article.revisions) {
    if (rev.rev_id == rev_id) return rev.wikitext;
  }
  throw Error(ErrorCode::kArticleNotFound,
              "article '" + title + "' has no revision " + std::to_string(rev_id));
}

uint64_t FixtureBackend::FetchBacklinkCount(const std::string &title) {
  Require(title);
  return backlinks_.at(title);
}

}  // namespace galaxy
