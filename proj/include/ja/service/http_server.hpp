#pragma once

#include <memory>
#include <string>

#include "ja/service/annotation_service.hpp"

namespace ja {

// HTTP surface of the annotation service. Bodies use the datastore document
// format; errors answer {"error": kind, "message": text} with 404 for
// not-found, 409 for conflict and 422 for validation failures.
//
//   GET  /videos
//   GET  /videos/{id}/segments
//   GET  /videos/{id}/media            (honours Range requests)
//   GET  /sessions/{id}/intervals
//   PUT  /sessions/{id}/intervals      {"expected_version", "intervals", "notes"?}
//   POST /sessions/{id}/submit
//   GET  /sessions/{id}/projection
class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationService& service);
  ~AnnotationServer();
  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port;
  // returns the bound port. Throws io error when binding fails.
  int start(const std::string& host, int port);
  // Serves on the calling thread until stop().
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status for an error kind.
int http_status(ErrorKind kind);

}  // namespace ja
