#include "galaxy/pipeline.h"

#include <cmath>
#include <sstream>

#include "galaxy/fixture.h"
#include "galaxy/mediawiki.h"
#include "galaxy/wikitext_links.h"

namespace galaxy {

using nlohmann::json;

namespace {

Error ConfigError(const std::string &message) { return Error(ErrorCode::kInvalidConfig, message); }

std::string_view FilterOrderName(FilterOrder order) {
  return order == FilterOrder::kDistanceFirst ? "distance" : "indegree";
}

}  // namespace

void RunConfig::Validate(bool require_seeds) {
  if (require_seeds && seeds.empty()) throw ConfigError("at least one seed is required");
  for (auto &seed : seeds) {
    try {
      seed = NormalizeTitle(seed);
    } catch (const Error &) {
      throw ConfigError("empty seed title");
    }
  }
  try {
    weights.Validate();
  } catch (const Error &e) {
    throw ConfigError(e.message());
  }
  if (!std::isfinite(threshold)) throw ConfigError("threshold must be finite");
  if (max_nodes == 0) throw ConfigError("max_nodes must be positive");
  if (window_days <= 0) throw ConfigError("window_days must be positive");
  if (frontier_depth < 0 || frontier_depth > 2) throw ConfigError("frontier_depth must be 0..2");
  for (size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i - 1] < timestamps[i])) {
      throw ConfigError("timestamps must be strictly increasing");
    }
  }
  try {
    eval.Validate();
  } catch (const Error &e) {
    throw ConfigError(e.message());
  }
  if (backend.empty()) throw ConfigError("backend selector is empty");
}

FilterConfig RunConfig::MapFilter() const {
  return FilterConfig{max_nodes, frontier_depth, filter_order, GraphScope::kCandidateSetOnly};
}

LayerWeights ParseWeights(const std::string &text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (part.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(part);
      }
    } catch (const std::exception &) {
      throw ConfigError("weights must be four comma-separated numbers, got '" + text + "'");
    }
  }
  if (values.size() != 4) {
    throw ConfigError("weights must be four comma-separated numbers, got '" + text + "'");
  }
  LayerWeights weights{values[0], values[1], values[2], values[3]};
  try {
    weights.Validate();
  } catch (const Error &e) {
    throw ConfigError(e.message());
  }
  return weights;
}

std::vector<Timestamp> ParseTimestampList(const std::string &text) {
  std::vector<Timestamp> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      out.push_back(ParseTimestamp(part));
    } catch (const Error &e) {
      throw ConfigError(e.message());
    }
  }
  return out;
}

RunConfig RunConfigFromJson(const json &doc, RunConfig base) {
  if (!doc.is_object()) throw ConfigError("run configuration must be a JSON object");
  RunConfig cfg = std::move(base);
  try {
    for (const auto &[key, value] : doc.items()) {
      if (key == "seeds") {
        cfg.seeds = value.get<std::vector<std::string>>();
      } else if (key == "weights") {
        if (value.is_array()) {
          auto w = value.get<std::vector<double>>();
          if (w.size() != 4) throw ConfigError("weights array needs four entries");
          cfg.weights = LayerWeights{w[0], w[1], w[2], w[3]};
        } else {
          for (const auto &[layer, weight] : value.items()) {
            double v = weight.get<double>();
            if (layer == "bidirectional") {
              cfg.weights.bidirectional = v;
            } else if (layer == "importance") {
              cfg.weights.importance = v;
            } else if (layer == "quality") {
              cfg.weights.quality = v;
            } else if (layer == "actuality") {
              cfg.weights.actuality = v;
            } else {
              throw ConfigError("unknown weight '" + layer + "'");
            }
          }
        }
      } else if (key == "threshold") {
        cfg.threshold = value.get<double>();
      } else if (key == "max_nodes") {
        int64_t n = value.get<int64_t>();
        if (n <= 0) throw ConfigError("max_nodes must be positive");
        cfg.max_nodes = static_cast<size_t>(n);
      } else if (key == "window_days") {
        cfg.window_days = value.get<int>();
      } else if (key == "window_end") {
        cfg.window_end = ParseTimestamp(value.get<std::string>());
      } else if (key == "frontier_depth") {
        cfg.frontier_depth = value.get<int>();
      } else if (key == "include_web") {
        cfg.include_web = value.get<bool>();
      } else if (key == "filter_order") {
        std::string order = value.get<std::string>();
        if (order == "distance") {
          cfg.filter_order = FilterOrder::kDistanceFirst;
        } else if (order == "indegree") {
          cfg.filter_order = FilterOrder::kIndegreeFirst;
        } else {
          throw ConfigError("filter_order must be 'distance' or 'indegree'");
        }
      } else if (key == "timestamps") {
        cfg.timestamps.clear();
        for (const auto &t : value) cfg.timestamps.push_back(ParseTimestamp(t.get<std::string>()));
      } else if (key == "k") {
        cfg.eval.k = value.get<int>();
      } else if (key == "log_base") {
        cfg.eval.log_base = value.get<double>();
      } else if (key == "backend") {
        cfg.backend = value.get<std::string>();
      } else {
        throw ConfigError("unknown configuration key '" + key + "'");
      }
    }
  } catch (const json::exception &e) {
    throw ConfigError(std::string("bad configuration value: ") + e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kInvalidConfig) throw;
    throw ConfigError(e.message());
  }
  return cfg;
}

json RunConfigToJson(const RunConfig &cfg) {
  json timestamps = json::array();
  for (Timestamp t : cfg.timestamps) timestamps.push_back(FormatTimestamp(t));
  json doc = {{"seeds", cfg.seeds},
              {"weights",
               {{"bidirectional", cfg.weights.bidirectional},
                {"importance", cfg.weights.importance},
                {"quality", cfg.weights.quality},
                {"actuality", cfg.weights.actuality}}},
              {"threshold", cfg.threshold},
              {"max_nodes", cfg.max_nodes},
              {"window_days", cfg.window_days},
              {"frontier_depth", cfg.frontier_depth},
              {"include_web", cfg.include_web},
              {"filter_order", FilterOrderName(cfg.filter_order)},
              {"timestamps", std::move(timestamps)},
              {"k", cfg.eval.k},
              {"log_base", cfg.eval.log_base},
              {"backend", cfg.backend}};
  if (cfg.window_end) doc["window_end"] = FormatTimestamp(*cfg.window_end);
  return doc;
}

GraphResult RunGraphPipeline(ArticleSource &source, RunConfig cfg) {
  cfg.Validate();
  std::set<std::string> seeds(cfg.seeds.begin(), cfg.seeds.end());
  auto records = CollectCandidates(source, seeds, std::nullopt, cfg.frontier_depth);

  GraphResult result;
  SemanticGraph graph = BuildGraph(
      records, cfg.include_web ? GraphScope::kIncludeWebNodes : GraphScope::kCandidateSetOnly);
  graph = BuildBidirectionalLayer(graph);

  std::map<std::string, double> quality, importance;
  std::vector<std::string> titles;
  for (const auto &record : records) {
    quality[record.title] = ScoreQuality(record.assessment);
    importance[record.title] = ScoreImportance(record.assessment);
    titles.push_back(record.title);
  }
  graph = AttachScoreLayer(graph, Layer::kQuality, quality);
  graph = AttachScoreLayer(graph, Layer::kImportance, importance);

  result.actuality_window =
      TrailingWindow(cfg.window_end.value_or(source.ReferenceTime()), cfg.window_days);
  std::map<std::string, double> actuality;
  for (const auto &[title, count] : ScoreActuality(source, titles, result.actuality_window)) {
    actuality[title] = static_cast<double>(count);
  }
  graph = AttachScoreLayer(graph, Layer::kActuality, actuality);

  result.combined = CombineLayers(graph, cfg.weights);
  result.ranked = ApplyThreshold(graph, result.combined.values, cfg.threshold);
  result.candidates = std::move(graph);
  result.degree = DegreeCentrality(result.ranked);
  result.betweenness = BetweennessCentrality(result.ranked);
  return result;
}

json GraphDocument(const GraphResult &result, const RunConfig &cfg) {
  json doc = GraphToJson(result.ranked);
  doc["schema"] = kBuildSchema;
  for (json &node : doc["nodes"]) {
    NodeId id{ParseNodeKind(node["kind"].get<std::string>()), node["id"].get<std::string>()};
    node["combined"] = result.combined.values.at(id);
    node["centrality"] = {{"degree", result.degree.values.at(id)},
                          {"betweenness", result.betweenness.values.at(id)}};
  }
  json degenerate = json::array();
  for (Layer layer : result.combined.degenerate_layers) degenerate.push_back(LayerName(layer));
  doc["run"] = {{"seeds", cfg.seeds},
                {"weights",
                 {{"bidirectional", cfg.weights.bidirectional},
                  {"importance", cfg.weights.importance},
                  {"quality", cfg.weights.quality},
                  {"actuality", cfg.weights.actuality}}},
                {"threshold", cfg.threshold},
                {"frontier_depth", cfg.frontier_depth},
                {"include_web", cfg.include_web},
                {"actuality_window",
                 {{"start", FormatTimestamp(result.actuality_window.start)},
                  {"end", FormatTimestamp(result.actuality_window.end)}}},
                {"degenerate_layers", std::move(degenerate)},
                {"candidate_nodes", result.candidates.node_count()}};
  return doc;
}

json SeriesDocument(ArticleSource &source, RunConfig cfg) {
  cfg.Validate();
  if (cfg.timestamps.empty()) throw ConfigError("a series needs at least one timestamp");
  std::set<std::string> seeds(cfg.seeds.begin(), cfg.seeds.end());
  return ExportSeries(BuildSeries(source, seeds, cfg.timestamps, cfg.MapFilter()));
}

std::string DocumentText(const json &doc) { return doc.dump(2) + "\n"; }

std::shared_ptr<ArticleSource> MakeSource(const std::string &backend,
                                          std::shared_ptr<Store> store,
                                          double requests_per_second) {
  if (backend == "live") {
    static SteadyClock clock;
    auto limiter = std::make_shared<RateLimiter>(requests_per_second, clock);
    auto transport = std::make_shared<HttplibTransport>("https://en.wikipedia.org");
    return std::make_shared<ArticleSource>(
        std::make_shared<MediaWikiBackend>(std::move(transport), std::move(limiter)),
        std::move(store));
  }
  std::string dir = backend.rfind("fixture:", 0) == 0 ? backend.substr(8) : backend;
  auto corpus = std::make_shared<FixtureCorpus>(FixtureCorpus::LoadDirectory(dir));
  return std::make_shared<ArticleSource>(std::make_shared<FixtureBackend>(std::move(corpus)),
                                         std::move(store));
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kEmptyQuery:
    case ErrorCode::kEmptyTitle:
    case ErrorCode::kNotAUrl:
    case ErrorCode::kInvalidLabel:
      return 2;
    case ErrorCode::kArticleNotFound:
    case ErrorCode::kSeedNotFound:
    case ErrorCode::kSeedNotInGraph:
      return 3;
    case ErrorCode::kBackendUnavailable:
      return 4;
    case ErrorCode::kCorruptStore:
      return 6;
    default:
      return 5;
  }
}

int HttpStatusFor(ErrorCode code) {
  switch (ExitCodeFor(code)) {
    case 2: return 400;
    case 3: return 404;
    case 4: return 502;
    case 6: return 500;
    default: return 422;
  }
}

}  // namespace galaxy
