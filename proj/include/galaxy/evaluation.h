#ifndef GALAXY_EVALUATION_H_
#define GALAXY_EVALUATION_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace galaxy {

// Relevance labels of one query: 0 not relevant, 1 relevant, 2 highly
// relevant. Keys are canonical titles or normalized URLs.
struct JudgmentSet {
  std::string query;
  std::map<std::string, int> labels;

  int highly_relevant() const;  // n_HR
  int relevant() const;         // n_R
  // Label of `key` (canonicalized first); unjudged items are 0.
  int LabelOf(const std::string &key) const;
};

// Canonical form of an item key: URLs are normalized, anything else is
// treated as an article title.
std::string CanonicalItemKey(const std::string &raw);

// Tab-separated "query\titem\trating" lines; '#' starts a comment. Throws
// kInvalidLabel for ratings outside {0, 1, 2}.
std::map<std::string, JudgmentSet> ParseJudgments(const std::string &text);
std::map<std::string, JudgmentSet> LoadJudgments(const std::filesystem::path &path);

// Ranked items, best first. Throws kInvalidArgument on duplicate keys.
struct RankedResult {
  std::vector<std::string> items;

  static RankedResult FromItems(std::vector<std::string> items);
};

// One item per line, blank lines and '#' comments ignored.
RankedResult LoadRankedResult(const std::filesystem::path &path);

struct EvalConfig {
  int k = 10;
  double log_base = 2.0;

  void Validate() const;
};

// Identity on {0, 1, 2}; throws kInvalidLabel otherwise.
int Reward(int label);

// Ideal gain profile s(1..k): n_hr twos, then n_r ones, then zeros.
std::vector<int> IdealProfile(int n_hr, int n_r, int k);

// N_q = sum_{p=1..k} (2^s(p) - 1) / log_base(1 + p). Throws kNoRelevantItems
// when n_hr + n_r == 0.
double Normalizer(int n_hr, int n_r, int k, double log_base = 2.0);

// G_q(k) = (1 / N_q) sum_{p=1..k} (2^r(p) - 1) / log_base(1 + p), with the
// judgment counts clamped to the k available positions.
double NdcgAtK(const RankedResult &result, const JudgmentSet &judgments, const EvalConfig &cfg);

struct VariantScore {
  std::string name;
  double ndcg = 0.0;
};

// Scores sorted descending, ties by name.
std::vector<VariantScore> CompareVariants(const std::map<std::string, RankedResult> &variants,
                                          const JudgmentSet &judgments, const EvalConfig &cfg);

std::string VariantTable(const std::vector<VariantScore> &scores, const EvalConfig &cfg);
nlohmann::json VariantTableJson(const std::vector<VariantScore> &scores,
                                const JudgmentSet &judgments, const EvalConfig &cfg);

}  // namespace galaxy

#endif  // GALAXY_EVALUATION_H_
