#include "galaxy/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "galaxy/error.h"
#include "galaxy/wikitext_links.h"

namespace galaxy {
namespace {

double Discount(int position, double log_base) {
  return std::log(1.0 + position) / std::log(log_base);
}

std::string TrimCopy(const std::string &s) {
  size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int JudgmentSet::highly_relevant() const {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(),
                                        [](const auto &e) { return e.second == 2; }));
}

int JudgmentSet::relevant() const {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(),
                                        [](const auto &e) { return e.second == 1; }));
}

int JudgmentSet::LabelOf(const std::string &key) const {
  std::string canonical;
  try {
    canonical = CanonicalItemKey(key);
  } catch (const Error &) {
    return 0;
  }
  auto it = labels.find(canonical);
  return it == labels.end() ? 0 : it->second;
}

std::string CanonicalItemKey(const std::string &raw) {
  std::string trimmed = TrimCopy(raw);
  if (trimmed.find("://") != std::string::npos) return NormalizeUrl(trimmed);
  return NormalizeTitle(trimmed);
}

std::map<std::string, JudgmentSet> ParseJudgments(const std::string &text) {
  std::map<std::string, JudgmentSet> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = TrimCopy(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, '\t')) fields.push_back(TrimCopy(field));
    if (fields.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument,
                  "judgment line " + std::to_string(line_no) + " needs 3 tab-separated fields");
    }
    int rating = 0;
    try {
      size_t used = 0;
      rating = std::stoi(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw Error(ErrorCode::kInvalidLabel,
                  "judgment line " + std::to_string(line_no) + " has rating '" + fields[2] + "'");
    }
    Reward(rating);
    JudgmentSet &set = out[fields[0]];
    set.query = fields[0];
    set.labels[CanonicalItemKey(fields[1])] = rating;
  }
  return out;
}

std::map<std::string, JudgmentSet> LoadJudgments(const std::filesystem::path &path) {
  return ParseJudgments(ReadFile(path));
}

RankedResult RankedResult::FromItems(std::vector<std::string> items) {
  std::set<std::string> seen;
  for (const auto &item : items) {
    if (!seen.insert(item).second) {
      throw Error(ErrorCode::kInvalidArgument, "ranked result lists '" + item + "' twice");
    }
  }
  return RankedResult{std::move(items)};
}

RankedResult LoadRankedResult(const std::filesystem::path &path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    std::string trimmed = TrimCopy(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    items.push_back(trimmed);
  }
  return RankedResult::FromItems(std::move(items));
}

void EvalConfig::Validate() const {
  if (k < 1) throw Error(ErrorCode::kInvalidConfig, "k must be at least 1");
  if (!(log_base > 1.0) || !std::isfinite(log_base)) {
    throw Error(ErrorCode::kInvalidConfig, "log base must be greater than 1");
  }
}

int Reward(int label) {
  if (label < 0 || label > 2) {
    throw Error(ErrorCode::kInvalidLabel, "label " + std::to_string(label) + " not in {0,1,2}");
  }
  return label;
}

std::vector<int> IdealProfile(int n_hr, int n_r, int k) {
  if (n_hr < 0 || n_r < 0 || k < 0) {
    throw Error(ErrorCode::kInvalidArgument, "ideal profile needs non-negative counts");
  }
  std::vector<int> profile(static_cast<size_t>(k), 0);
  for (int p = 1; p <= k; ++p) {
    if (p <= n_hr) {
      profile[p - 1] = 2;
    } else if (p <= n_hr + n_r) {
      profile[p - 1] = 1;
    }
  }
  return profile;
}

double Normalizer(int n_hr, int n_r, int k, double log_base) {
  EvalConfig{k, log_base}.Validate();
  if (n_hr + n_r == 0) {
    throw Error(ErrorCode::kNoRelevantItems, "no relevant items; nDCG is undefined");
  }
  double total = 0.0;
  std::vector<int> profile = IdealProfile(n_hr, n_r, k);
  for (int p = 1; p <= k; ++p) {
    total += (std::exp2(profile[p - 1]) - 1.0) / Discount(p, log_base);
  }
  return total;
}

double NdcgAtK(const RankedResult &result, const JudgmentSet &judgments, const EvalConfig &cfg) {
  cfg.Validate();
  if (result.items.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ranked result is empty");
  }
  int n_hr = std::min(judgments.highly_relevant(), cfg.k);
  int n_r = std::min(judgments.relevant(), cfg.k - n_hr);
  double normalizer = Normalizer(n_hr, n_r, cfg.k, cfg.log_base);
  double gain = 0.0;
  const int limit = std::min<int>(cfg.k, static_cast<int>(result.items.size()));
  for (int p = 1; p <= limit; ++p) {
    int r = Reward(judgments.LabelOf(result.items[p - 1]));
    gain += (std::exp2(r) - 1.0) / Discount(p, cfg.log_base);
  }
  return gain / normalizer;
}

std::vector<VariantScore> CompareVariants(const std::map<std::string, RankedResult> &variants,
                                          const JudgmentSet &judgments, const EvalConfig &cfg) {
  std::vector<VariantScore> out;
  for (const auto &[name, result] : variants) {
    out.push_back(VariantScore{name, NdcgAtK(result, judgments, cfg)});
  }
  std::stable_sort(out.begin(), out.end(), [](const VariantScore &a, const VariantScore &b) {
    if (a.ndcg != b.ndcg) return a.ndcg > b.ndcg;
    return a.name < b.name;
  });
  return out;
}

std::string VariantTable(const std::vector<VariantScore> &scores, const EvalConfig &cfg) {
  size_t width = 7;
  for (const auto &s : scores) width = std::max(width, s.name.size());
  std::ostringstream out;
  std::string header = "nDCG@" + std::to_string(cfg.k);
  out << "variant" << std::string(width - 7 + 2, ' ') << header << '\n';
  for (const auto &s : scores) {
    char value[32];
    std::snprintf(value, sizeof(value), "%.4f", s.ndcg);
    out << s.name << std::string(width - s.name.size() + 2, ' ') << value << '\n';
  }
  return out.str();
}

nlohmann::json VariantTableJson(const std::vector<VariantScore> &scores,
                                const JudgmentSet &judgments, const EvalConfig &cfg) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &s : scores) rows.push_back({{"variant", s.name}, {"ndcg", s.ndcg}});
  return {{"schema", "galaxysearch.eval/1"},
          {"query", judgments.query},
          {"k", cfg.k},
          {"log_base", cfg.log_base},
          {"results", std::move(rows)}};
}

}  // namespace galaxy
