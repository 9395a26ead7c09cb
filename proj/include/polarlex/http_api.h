#pragma once

#include <memory>
#include <string>

#include "polarlex/service.h"

namespace polarlex {

// JSON HTTP front end for an AnnotationService:
//   POST /api/sessions             {"annotator"} -> 201 {"session_id"}
//   GET  /api/sessions/{id}/next   -> 200 item | 204 when exhausted
//   POST /api/sessions/{id}/tags   {"lemma","domain","tag","amend"?} -> 201 | 409
//   GET  /api/progress
//   GET  /api/agreement
class ApiServer {
 public:
  explicit ApiServer(AnnotationService& service);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds to host:port (port 0 picks a free port) and returns the bound
  // port. Throws std::runtime_error when the address is unavailable.
  int bind(const std::string& host, int port);

  // Serves until stop(); requires a prior bind().
  void run();
  void stop();
  // Blocks until the server is accepting connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Splits "host:port" (or ":port", or "[v6]:port"). Throws UsageError.
std::pair<std::string, int> parse_listen_address(const std::string& address);

}  // namespace polarlex
