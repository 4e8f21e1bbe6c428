#ifndef GALAXY_RANKING_H_
#define GALAXY_RANKING_H_

#include <map>
#include <string>
#include <vector>

#include "galaxy/graph.h"
#include "galaxy/source.h"

namespace galaxy {

enum class IndegreeMode {
  kWikiWide,          // backlinks from the whole wiki, via the source
  kWithinCandidates,  // distinct in-neighbours inside the graph
};

// In WikiWide mode web nodes have no wiki-wide counter and fall back to their
// in-graph citation count. Throws kInvalidArgument if WikiWide lacks a source.
std::map<NodeId, uint64_t> ScoreIndegree(const SemanticGraph &graph, IndegreeMode mode,
                                         ArticleSource *source = nullptr);

// Replaces the Bidirectional layer: one edge each way for every article pair
// linked in both directions, and every article's Bidirectional score set to
// its number of mutual partners.
SemanticGraph BuildBidirectionalLayer(const SemanticGraph &graph);

// Unrated 0, List 1 ... FA 9.
int ScoreQuality(const AssessmentRating &rating);
// Unrated 0, Low 1 ... Top 4.
int ScoreImportance(const AssessmentRating &rating);

// Revision count inside `window` for each title.
std::map<std::string, uint64_t> ScoreActuality(ArticleSource &source,
                                               const std::vector<std::string> &titles,
                                               const TimeWindow &window);

// Sum of the citing articles' scores for every web node in the graph.
std::map<std::string, double> ScoreUrls(const SemanticGraph &graph,
                                        const std::map<std::string, double> &article_scores);

// Stores `article_scores` as the layer's article scores, derives web node
// scores with ScoreUrls, and adds a layer edge a -> b (weight = b's score)
// for every link edge whose target scores above zero.
SemanticGraph AttachScoreLayer(const SemanticGraph &graph, Layer layer,
                               const std::map<std::string, double> &article_scores);

struct LayerWeights {
  double bidirectional = 1.0;
  double importance = 1.0;
  double quality = 1.0;
  double actuality = 1.0;

  double For(Layer layer) const;
  // Non-negative, finite, at least one positive; throws kInvalidConfig.
  void Validate() const;
  bool operator==(const LayerWeights &) const = default;
};

struct CombinedScores {
  std::map<NodeId, double> values;
  // Weighted layers that were constant over the graph and so contributed 0.
  std::vector<Layer> degenerate_layers;
};

// combined(n) = sum over ranking layers of weight * min-max normalized score.
CombinedScores CombineLayers(const SemanticGraph &graph, const LayerWeights &weights);

// Nodes by descending score; ties by higher Bidirectional score, then key.
std::vector<NodeId> RankOrder(const SemanticGraph &graph, const std::map<NodeId, double> &scores);

// Removes nodes scoring strictly below theta (missing scores count as 0) and
// any web node left without a citing article.
SemanticGraph ApplyThreshold(const SemanticGraph &graph, const std::map<NodeId, double> &scores,
                             double theta);

}  // namespace galaxy

#endif  // GALAXY_RANKING_H_
