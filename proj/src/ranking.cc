#include "galaxy/ranking.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "galaxy/error.h"

namespace galaxy {

std::map<NodeId, uint64_t> ScoreIndegree(const SemanticGraph &graph, IndegreeMode mode,
                                         ArticleSource *source) {
  if (mode == IndegreeMode::kWikiWide && source == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "wiki-wide indegree needs a source");
  }
  std::map<NodeId, uint64_t> out;
  const auto in_graph = graph.InDegrees();
  for (const auto &[node, data] : graph.nodes()) {
    if (mode == IndegreeMode::kWikiWide && node.kind == NodeKind::kArticle) {
      out[node] = source->FetchBacklinkCount(node.key);
    } else {
      out[node] = in_graph.at(node);
    }
  }
  return out;
}

SemanticGraph BuildBidirectionalLayer(const SemanticGraph &graph) {
  SemanticGraph out = graph;
  out.RemoveLayer(Layer::kBidirectional);
  std::map<NodeId, int> partners;
  for (const auto &[key, weight] : graph.edges()) {
    if (key.layer != Layer::kLink || key.src.kind != NodeKind::kArticle ||
        key.dst.kind != NodeKind::kArticle) {
      continue;
    }
    if (graph.HasEdge(key.dst, key.src, Layer::kLink)) {
      out.AddEdge(key.src, key.dst, Layer::kBidirectional, 1.0);
      ++partners[key.src];
    }
  }
  for (const NodeId &article : graph.NodesOfKind(NodeKind::kArticle)) {
    out.SetScore(article, Layer::kBidirectional, partners[article]);
  }
  return out;
}

int ScoreQuality(const AssessmentRating &rating) { return static_cast<int>(rating.quality); }

int ScoreImportance(const AssessmentRating &rating) {
  return static_cast<int>(rating.importance);
}

std::map<std::string, uint64_t> ScoreActuality(ArticleSource &source,
                                               const std::vector<std::string> &titles,
                                               const TimeWindow &window) {
  std::map<std::string, uint64_t> out;
  for (const auto &title : titles) out[title] = source.FetchRevisionCount(title, window);
  return out;
}

std::map<std::string, double> ScoreUrls(const SemanticGraph &graph,
                                        const std::map<std::string, double> &article_scores) {
  std::map<std::string, double> out;
  for (const NodeId &web : graph.NodesOfKind(NodeKind::kWeb)) out[web.key] = 0.0;
  for (const auto &[key, weight] : graph.edges()) {
    if (key.layer != Layer::kMention || key.dst.kind != NodeKind::kWeb) continue;
    auto it = article_scores.find(key.src.key);
    if (it != article_scores.end()) out[key.dst.key] += it->second;
  }
  return out;
}

SemanticGraph AttachScoreLayer(const SemanticGraph &graph, Layer layer,
                               const std::map<std::string, double> &article_scores) {
  if (layer == Layer::kLink || layer == Layer::kMention || layer == Layer::kBidirectional) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(LayerName(layer)) + " is not a score layer");
  }
  SemanticGraph out = graph;
  out.RemoveLayer(layer);
  auto score_of = [&](const std::string &title) {
    auto it = article_scores.find(title);
    return it == article_scores.end() ? 0.0 : it->second;
  };
  for (const NodeId &article : graph.NodesOfKind(NodeKind::kArticle)) {
    out.SetScore(article, layer, score_of(article.key));
  }
  for (const auto &[url, value] : ScoreUrls(graph, article_scores)) {
    out.SetScore(NodeId::Web(url), layer, value);
  }
  for (const auto &[key, weight] : graph.edges()) {
    if (key.layer != Layer::kLink) continue;
    double target = score_of(key.dst.key);
    if (target > 0) out.AddEdge(key.src, key.dst, layer, target);
  }
  return out;
}

double LayerWeights::For(Layer layer) const {
  switch (layer) {
    case Layer::kBidirectional: return bidirectional;
    case Layer::kImportance: return importance;
    case Layer::kQuality: return quality;
    case Layer::kActuality: return actuality;
    default: return 0.0;
  }
}

void LayerWeights::Validate() const {
  bool any_positive = false;
  for (Layer layer : kRankingLayers) {
    double w = For(layer);
    if (!std::isfinite(w) || w < 0) {
      throw Error(ErrorCode::kInvalidConfig, "layer weights must be finite and non-negative");
    }
    any_positive = any_positive || w > 0;
  }
  if (!any_positive) {
    throw Error(ErrorCode::kInvalidConfig, "at least one layer weight must be positive");
  }
}

CombinedScores CombineLayers(const SemanticGraph &graph, const LayerWeights &weights) {
  weights.Validate();
  CombinedScores out;
  for (const auto &[node, data] : graph.nodes()) out.values[node] = 0.0;
  if (graph.node_count() == 0) return out;
  for (Layer layer : kRankingLayers) {
    double w = weights.For(layer);
    if (w == 0) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto &[node, data] : graph.nodes()) {
      double s = graph.ScoreOrZero(node, layer);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (!(hi > lo)) {
      out.degenerate_layers.push_back(layer);
      continue;
    }
    for (const auto &[node, data] : graph.nodes()) {
      out.values[node] += w * (graph.ScoreOrZero(node, layer) - lo) / (hi - lo);
    }
  }
  return out;
}

std::vector<NodeId> RankOrder(const SemanticGraph &graph, const std::map<NodeId, double> &scores) {
  std::vector<NodeId> order;
  for (const auto &[node, value] : scores) order.push_back(node);
  std::stable_sort(order.begin(), order.end(), [&](const NodeId &a, const NodeId &b) {
    double sa = scores.at(a);
    double sb = scores.at(b);
    if (sa != sb) return sa > sb;
    double ba = graph.ScoreOrZero(a, Layer::kBidirectional);
    double bb = graph.ScoreOrZero(b, Layer::kBidirectional);
    if (ba != bb) return ba > bb;
    return a < b;
  });
  return order;
}

SemanticGraph ApplyThreshold(const SemanticGraph &graph, const std::map<NodeId, double> &scores,
                             double theta) {
  if (!std::isfinite(theta)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be finite");
  }
  std::set<NodeId> keep;
  for (const auto &[node, data] : graph.nodes()) {
    auto it = scores.find(node);
    double s = it == scores.end() ? 0.0 : it->second;
    if (!(s < theta)) keep.insert(node);
  }
  return InducedSubgraph(graph, keep);
}

}  // namespace galaxy
