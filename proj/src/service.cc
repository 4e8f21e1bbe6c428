#include "galaxy/service.h"

#include "httplib.h"

namespace galaxy {

using nlohmann::json;

namespace {

void SendJson(httplib::Response &res, int status, const std::string &body) {
  res.status = status;
  res.set_content(body, "application/json");
}

void SendError(httplib::Response &res, ErrorCode code, const std::string &message) {
  json body = {{"error", ErrorCodeName(code)}, {"message", message}};
  SendJson(res, HttpStatusFor(code), DocumentText(body));
}

// Runs `handler`, translating library errors into HTTP errors.
template <typename Handler>
void Guarded(httplib::Response &res, Handler handler) {
  try {
    handler();
  } catch (const Error &e) {
    SendError(res, e.code(), e.message());
  } catch (const std::exception &e) {
    json body = {{"error", "Internal"}, {"message", e.what()}};
    SendJson(res, 500, DocumentText(body));
  }
}

RunConfig ConfigFromBody(const std::string &body, const RunConfig &defaults) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::kInvalidConfig, "request body is not JSON");
  if (doc.is_object()) doc.erase("backend");
  RunConfig cfg = RunConfigFromJson(doc, defaults);
  cfg.Validate();
  return cfg;
}

}  // namespace

Service::Service(std::shared_ptr<ArticleSource> source, RunConfig defaults)
    : source_(std::move(source)),
      defaults_(std::move(defaults)),
      server_(std::make_unique<httplib::Server>()) {
  server_->Get("/api/health", [](const httplib::Request &, httplib::Response &res) {
    SendJson(res, 200, DocumentText(json{{"status", "ok"}}));
  });

  server_->Get("/api/seeds", [this](const httplib::Request &req, httplib::Response &res) {
    Guarded(res, [&] {
      std::string query = req.get_param_value("q");
      size_t limit = 10;
      if (req.has_param("limit")) {
        try {
          limit = std::stoul(req.get_param_value("limit"));
        } catch (const std::exception &) {
          throw Error(ErrorCode::kInvalidArgument, "limit must be a positive integer");
        }
      }
      auto seeds = source_->SearchSeeds(query, limit);
      SendJson(res, 200, DocumentText(json{{"query", query}, {"seeds", seeds}}));
    });
  });

  server_->Post("/api/graph", [this](const httplib::Request &req, httplib::Response &res) {
    Guarded(res, [&] {
      RunConfig cfg = ConfigFromBody(req.body, defaults_);
      GraphResult result = RunGraphPipeline(*source_, cfg);
      SendJson(res, 200, DocumentText(GraphDocument(result, cfg)));
    });
  });

  server_->Post("/api/series", [this](const httplib::Request &req, httplib::Response &res) {
    Guarded(res, [&] {
      RunConfig cfg = ConfigFromBody(req.body, defaults_);
      SendJson(res, 200, DocumentText(SeriesDocument(*source_, cfg)));
    });
  });
}

Service::~Service() { Stop(); }

bool Service::Listen(const std::string &host, int port) { return server_->listen(host, port); }

int Service::BindToAnyPort(const std::string &host) { return server_->bind_to_any_port(host); }

bool Service::ListenAfterBind() { return server_->listen_after_bind(); }

void Service::Stop() {
  if (server_) server_->stop();
}

}  // namespace galaxy
