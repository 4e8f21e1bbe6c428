#ifndef GALAXY_PIPELINE_H_
#define GALAXY_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galaxy/centrality.h"
#include "galaxy/error.h"
#include "galaxy/evaluation.h"
#include "galaxy/ranking.h"
#include "galaxy/source.h"
#include "galaxy/timeline.h"

namespace galaxy {

// Everything one WikiSearch / WikiMap run needs. Validate() runs before any
// backend is touched.
struct RunConfig {
  std::vector<std::string> seeds;
  LayerWeights weights;
  double threshold = 0.0;
  size_t max_nodes = 50;
  int window_days = 14;
  // End of the actuality window; the backend's reference time when unset.
  std::optional<Timestamp> window_end;
  int frontier_depth = 1;
  bool include_web = true;
  FilterOrder filter_order = FilterOrder::kDistanceFirst;
  std::vector<Timestamp> timestamps;
  EvalConfig eval;
  // "live", "fixture:<dir>" or a bare fixture directory.
  std::string backend = "live";

  // Canonicalizes seeds and checks every field; throws kInvalidConfig. The
  // service's defaults may leave seeds to each request.
  void Validate(bool require_seeds = true);
  FilterConfig MapFilter() const;
};

// Applies the keys present in `doc` on top of `base`. Accepted keys: seeds,
// weights ({"bidirectional", ...} or [bid, imp, qua, act]), threshold,
// max_nodes, window_days, window_end, frontier_depth, include_web,
// filter_order ("distance" | "indegree"), timestamps, k, log_base, backend.
// Unknown keys are rejected with kInvalidConfig.
RunConfig RunConfigFromJson(const nlohmann::json &doc, RunConfig base = {});
nlohmann::json RunConfigToJson(const RunConfig &cfg);

// "1,0,0,0" -> weights; throws kInvalidConfig.
LayerWeights ParseWeights(const std::string &text);
std::vector<Timestamp> ParseTimestampList(const std::string &text);

struct GraphResult {
  SemanticGraph candidates;  // all layers, before the threshold
  SemanticGraph ranked;      // after the threshold
  CombinedScores combined;
  CentralityReport degree;
  CentralityReport betweenness;
  TimeWindow actuality_window;
};

// Collects seeds and their outlink frontier, builds the four ranking layers,
// combines them with cfg.weights, applies the threshold and computes degree
// and betweenness on what is left.
GraphResult RunGraphPipeline(ArticleSource &source, RunConfig cfg);

inline constexpr char kBuildSchema[] = "galaxysearch.build/1";

// The graph export of `ranked`, each node annotated with "combined" and
// "centrality", plus the run parameters.
nlohmann::json GraphDocument(const GraphResult &result, const RunConfig &cfg);

nlohmann::json SeriesDocument(ArticleSource &source, RunConfig cfg);

// Serialized form shared by the CLI and the HTTP service.
std::string DocumentText(const nlohmann::json &doc);

// Selector -> source. Fixture backends are loaded eagerly; the live backend
// talks to en.wikipedia.org at `requests_per_second`.
std::shared_ptr<ArticleSource> MakeSource(const std::string &backend,
                                          std::shared_ptr<Store> store,
                                          double requests_per_second = 5.0);

int ExitCodeFor(ErrorCode code);
int HttpStatusFor(ErrorCode code);

}  // namespace galaxy

#endif  // GALAXY_PIPELINE_H_
