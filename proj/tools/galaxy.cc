// galaxy: command-line entry point for topic graphs, WikiMap series,
// nDCG evaluation and the HTTP service.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "galaxy/pipeline.h"
#include "galaxy/service.h"

namespace fs = std::filesystem;
using galaxy::Error;
using galaxy::ErrorCode;
using nlohmann::json;

namespace {

struct RunFlags {
  std::string config_path;
  std::vector<std::string> seeds;
  std::string weights;
  double threshold = 0;
  size_t max_nodes = 0;
  int window_days = 0;
  std::string window_end;
  int depth = 0;
  bool no_web = false;
  std::string filter_order;
  std::string timestamps;
  std::string backend;
  std::string store_dir;
  double rate = 5.0;
};

void AddRunFlags(CLI::App *cmd, RunFlags &flags) {
  cmd->add_option("--config", flags.config_path, "JSON run configuration file");
  cmd->add_option("--seeds", flags.seeds, "Seed article titles ('|'-separated or repeated)")
      ->delimiter('|');
  cmd->add_option("--weights", flags.weights, "Layer weights bid,imp,qua,act");
  cmd->add_option("--threshold", flags.threshold, "Drop nodes whose combined score is below this");
  cmd->add_option("--max-nodes", flags.max_nodes, "Node budget for WikiMap frames");
  cmd->add_option("--window-days", flags.window_days, "Actuality window length in days");
  cmd->add_option("--window-end", flags.window_end, "Actuality window end (RFC 3339 UTC)");
  cmd->add_option("--depth", flags.depth, "Outlink hops collected around the seeds");
  cmd->add_flag("--no-web", flags.no_web, "Leave external URLs out of the graph");
  cmd->add_option("--filter-order", flags.filter_order, "WikiMap ranking: distance|indegree");
  cmd->add_option("--backend", flags.backend, "live, fixture:<dir> or a fixture directory");
  cmd->add_option("--store", flags.store_dir, "Directory of the persistent revision cache");
  cmd->add_option("--rate", flags.rate, "Live backend requests per second");
}

// Defaults < config file < flags.
galaxy::RunConfig ResolveConfig(CLI::App *cmd, const RunFlags &flags,
                                bool require_seeds = true) {
  galaxy::RunConfig cfg;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot read " + flags.config_path);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
      throw Error(ErrorCode::kInvalidConfig, flags.config_path + " is not valid JSON");
    }
    cfg = galaxy::RunConfigFromJson(doc, cfg);
  }
  auto given = [&](const char *name) {
    const CLI::Option *opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--seeds")) cfg.seeds = flags.seeds;
  if (given("--weights")) cfg.weights = galaxy::ParseWeights(flags.weights);
  if (given("--threshold")) cfg.threshold = flags.threshold;
  if (given("--max-nodes")) cfg.max_nodes = flags.max_nodes;
  if (given("--window-days")) cfg.window_days = flags.window_days;
  if (given("--window-end")) {
    try {
      cfg.window_end = galaxy::ParseTimestamp(flags.window_end);
    } catch (const Error &e) {
      throw Error(ErrorCode::kInvalidConfig, e.message());
    }
  }
  if (given("--depth")) cfg.frontier_depth = flags.depth;
  if (given("--no-web")) cfg.include_web = false;
  if (given("--filter-order")) {
    cfg = galaxy::RunConfigFromJson(json{{"filter_order", flags.filter_order}}, cfg);
  }
  if (given("--timestamps")) cfg.timestamps = galaxy::ParseTimestampList(flags.timestamps);
  if (given("--backend")) cfg.backend = flags.backend;
  cfg.Validate(require_seeds);
  return cfg;
}

std::shared_ptr<galaxy::ArticleSource> OpenSource(const galaxy::RunConfig &cfg,
                                                  const RunFlags &flags) {
  auto store = flags.store_dir.empty() ? std::make_shared<galaxy::Store>()
                                       : std::make_shared<galaxy::Store>(flags.store_dir);
  return galaxy::MakeSource(cfg.backend, std::move(store), flags.rate);
}

void WriteFile(const fs::path &path, const std::string &content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"GalaxySearch: Wikipedia topic graphs, rankings and timelines"};
  app.require_subcommand(1);

  std::string search_term;
  size_t search_limit = 10;
  std::string search_backend = "live";
  auto *search = app.add_subcommand("search", "List candidate seed articles for a term");
  search->add_option("term", search_term, "Free-text query")->required();
  search->add_option("--limit", search_limit, "Maximum number of titles");
  search->add_option("--backend", search_backend, "live, fixture:<dir> or a fixture directory");

  RunFlags build_flags;
  std::string build_out;
  auto *build = app.add_subcommand("build", "Build, rank and filter a topic graph");
  AddRunFlags(build, build_flags);
  build->add_option("--out", build_out, "Directory for graph.json and centrality.tsv");

  RunFlags map_flags;
  std::string map_out;
  auto *map = app.add_subcommand("map", "Build a WikiMap series over timestamps");
  AddRunFlags(map, map_flags);
  map->add_option("--timestamps", map_flags.timestamps, "Comma-separated RFC 3339 UTC times");
  map->add_option("--out", map_out, "Series document path (stdout when absent)");

  std::vector<std::string> eval_results;
  std::string eval_judgments, eval_query, eval_out;
  galaxy::EvalConfig eval_cfg;
  auto *eval = app.add_subcommand("eval", "nDCG@k table for ranked result files");
  eval->add_option("results", eval_results, "Ranked result files, optionally name=path")
      ->required();
  eval->add_option("--judgments", eval_judgments, "query<TAB>item<TAB>rating file")->required();
  eval->add_option("--query", eval_query, "Query to evaluate (needed if the file has several)");
  eval->add_option("--k", eval_cfg.k, "Cutoff k");
  eval->add_option("--log-base", eval_cfg.log_base, "Discount logarithm base");
  eval->add_option("--out", eval_out, "Also write the table as JSON here");

  RunFlags serve_flags;
  std::string host = "127.0.0.1";
  int port = 8080;
  auto *serve = app.add_subcommand("serve", "Serve the HTTP API");
  AddRunFlags(serve, serve_flags);
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");

  std::string store_dir, corpus_dir;
  auto *store = app.add_subcommand("store", "Move data between the cache and fixture corpora");
  store->require_subcommand(1);
  auto *store_export = store->add_subcommand("export", "Write the cache as a fixture corpus");
  store_export->add_option("--store", store_dir, "Cache directory")->required();
  store_export->add_option("--out", corpus_dir, "Corpus directory")->required();
  auto *store_import = store->add_subcommand("import", "Load a fixture corpus into the cache");
  store_import->add_option("--store", store_dir, "Cache directory")->required();
  store_import->add_option("--from", corpus_dir, "Corpus directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*search) {
      auto source = galaxy::MakeSource(search_backend, std::make_shared<galaxy::Store>());
      for (const auto &title : source->SearchSeeds(search_term, search_limit)) {
        std::cout << title << "\n";
      }
    } else if (*build) {
      auto cfg = ResolveConfig(build, build_flags);
      auto source = OpenSource(cfg, build_flags);
      auto result = galaxy::RunGraphPipeline(*source, cfg);
      std::string doc = galaxy::DocumentText(galaxy::GraphDocument(result, cfg));
      if (build_out.empty()) {
        std::cout << doc;
      } else {
        WriteFile(fs::path(build_out) / "graph.json", doc);
        WriteFile(fs::path(build_out) / "centrality.tsv",
                  galaxy::ReportsToTsv({result.degree, result.betweenness}));
        std::cerr << "wrote " << result.ranked.node_count() << " nodes, "
                  << result.ranked.edge_count() << " edges to " << build_out << "\n";
      }
    } else if (*map) {
      auto cfg = ResolveConfig(map, map_flags);
      auto source = OpenSource(cfg, map_flags);
      std::string doc = galaxy::DocumentText(galaxy::SeriesDocument(*source, cfg));
      if (map_out.empty()) {
        std::cout << doc;
      } else {
        WriteFile(map_out, doc);
      }
    } else if (*eval) {
      try {
        eval_cfg.Validate();
      } catch (const Error &e) {
        throw Error(ErrorCode::kInvalidConfig, e.message());
      }
      auto judgments = galaxy::LoadJudgments(eval_judgments);
      if (judgments.empty()) throw Error(ErrorCode::kInvalidArgument, "no judgments found");
      if (eval_query.empty() && judgments.size() > 1) {
        throw Error(ErrorCode::kInvalidArgument, "judgment file has several queries; pass --query");
      }
      auto it = eval_query.empty() ? judgments.begin() : judgments.find(eval_query);
      if (it == judgments.end()) {
        throw Error(ErrorCode::kInvalidArgument, "no judgments for query '" + eval_query + "'");
      }
      std::map<std::string, galaxy::RankedResult> variants;
      for (const auto &arg : eval_results) {
        auto eq = arg.find('=');
        std::string name = eq == std::string::npos ? fs::path(arg).stem().string()
                                                    : arg.substr(0, eq);
        std::string path = eq == std::string::npos ? arg : arg.substr(eq + 1);
        variants[name] = galaxy::LoadRankedResult(path);
      }
      auto scores = galaxy::CompareVariants(variants, it->second, eval_cfg);
      std::cout << galaxy::VariantTable(scores, eval_cfg);
      if (!eval_out.empty()) {
        WriteFile(eval_out,
                  galaxy::DocumentText(galaxy::VariantTableJson(scores, it->second, eval_cfg)));
      }
    } else if (*serve) {
      auto cfg = ResolveConfig(serve, serve_flags, /*require_seeds=*/false);
      auto source = OpenSource(cfg, serve_flags);
      galaxy::Service service(source, cfg);
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      if (!service.Listen(host, port)) {
        std::cerr << "error: cannot bind " << host << ":" << port << "\n";
        return 4;
      }
    } else if (*store_export) {
      galaxy::Store cache(store_dir);
      cache.ExportCorpus().SaveDirectory(corpus_dir);
      std::cerr << "exported " << cache.size() << " revisions to " << corpus_dir << "\n";
    } else if (*store_import) {
      galaxy::Store cache(store_dir);
      auto corpus = galaxy::FixtureCorpus::LoadDirectory(corpus_dir);
      size_t added = cache.ImportCorpus(
          corpus, std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
      std::cerr << "imported " << added << " revisions into " << store_dir << "\n";
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return galaxy::ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
