#ifndef GALAXY_SERVICE_H_
#define GALAXY_SERVICE_H_

#include <memory>
#include <string>

#include "galaxy/pipeline.h"

namespace httplib {
class Server;
}

namespace galaxy {

// Read-only HTTP front end over one shared ArticleSource.
//
//   GET  /api/health            {"status": "ok"}
//   GET  /api/seeds?q=&limit=   {"query", "seeds": [...]}
//   POST /api/graph             RunConfig body -> graph document
//   POST /api/series            RunConfig body with timestamps -> series document
//
// Request bodies are layered over the service's default RunConfig; the
// "backend" key is ignored since the service owns its source. Errors come
// back as {"error": <code>, "message": ...} with 400 (bad request or config),
// 404 (unknown seed), 502 (backend failure) or 422 (other pipeline errors).
class Service {
 public:
  Service(std::shared_ptr<ArticleSource> source, RunConfig defaults);
  ~Service();

  // Binds and serves until Stop(). Returns false if the bind failed.
  bool Listen(const std::string &host, int port);
  // Binds to an ephemeral port and returns it, or -1. Serve with ListenAfterBind().
  int BindToAnyPort(const std::string &host);
  bool ListenAfterBind();
  void Stop();

 private:
  std::shared_ptr<ArticleSource> source_;
  RunConfig defaults_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace galaxy

#endif  // GALAXY_SERVICE_H_
