#include "ja/service/http_server.hpp"

#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <thread>

#include "ja/error.hpp"

namespace ja {

namespace fs = std::filesystem;
using nlohmann::json;

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotFound: return 404;
    case ErrorKind::kConflict: return 409;
    case ErrorKind::kValidation:
    case ErrorKind::kInvalidInput:
    case ErrorKind::kVersion: return 422;
    default: return 500;
  }
}

namespace {

void reply(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(canonical_json(body), "application/json");
}

void reply_error(httplib::Response& res, ErrorKind kind, const std::string& message) {
  reply(res, {{"error", to_string(kind)}, {"message", message}}, http_status(kind));
}

// Runs a handler, translating toolkit errors into status codes.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      reply_error(res, e.kind(), e.what());
    } catch (const json::exception& e) {
      reply_error(res, ErrorKind::kValidation, e.what());
    } catch (const std::exception& e) {
      reply_error(res, ErrorKind::kIo, e.what());
    }
  };
}

std::string media_type(const fs::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".mp4" || ext == ".m4v") return "video/mp4";
  if (ext == ".webm") return "video/webm";
  if (ext == ".mov") return "video/quicktime";
  if (ext == ".mkv") return "video/x-matroska";
  return "application/octet-stream";
}

json session_view(const AnnotationSession& s) {
  json j = encode(s);
  j.erase("schema_version");
  return j;
}

}  // namespace

struct AnnotationServer::Impl {
  AnnotationService& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(AnnotationService& s) : service(s) { routes(); }

  void routes() {
    server.Get("/videos", guarded([this](const httplib::Request&, httplib::Response& res) {
      json videos = json::array();
      for (const auto& v : service.list_videos()) videos.push_back(encode(v));
      reply(res, {{"videos", videos}});
    }));

    server.Get(R"(/videos/([^/]+)/segments)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 json segments = json::array();
                 for (const auto& s : service.get_segments(req.matches[1])) {
                   segments.push_back(encode(s));
                 }
                 reply(res, {{"video_id", req.matches[1].str()},
                             {"segments", segments}});
               }));

    server.Get(R"(/videos/([^/]+)/media)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 serve_media(service.video(req.matches[1]), res);
               }));

    server.Get(R"(/sessions/([^/]+)/intervals)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 reply(res, session_view(service.get_session(req.matches[1])));
               }));

    server.Put(R"(/sessions/([^/]+)/intervals)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 put_intervals(req.matches[1], req.body, res);
               }));

    server.Post(R"(/sessions/([^/]+)/submit)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  reply(res, session_view(service.submit(req.matches[1])));
                }));

    server.Get(R"(/sessions/([^/]+)/projection)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 reply(res, encode(service.get_projection(req.matches[1])));
               }));
  }

  void put_intervals(const std::string& session_id, const std::string& body,
                     httplib::Response& res) {
    const auto doc = parse_json(body, "body");
    JsonReader r(doc, "body");
    const auto expected = r.integer("expected_version");
    if (expected < 0) {
      throw ValidationError(r.path_of("expected_version"), "must be non-negative");
    }
    const auto [rater_id, video_id] = split_session_id(session_id);
    std::vector<IntervalAnnotation> intervals;
    const auto& items = r.array("intervals");
    for (std::size_t i = 0; i < items.size(); ++i) {
      // Clients may omit the ids the session already implies.
      json item = items[i];
      if (item.is_object()) {
        if (!item.contains("rater_id")) item["rater_id"] = rater_id;
        if (!item.contains("video_id")) item["video_id"] = video_id;
      }
      intervals.push_back(
          decode_interval(item, r.path_of("intervals") + "[" + std::to_string(i) + "]"));
    }
    const auto version = service.put_intervals(
        session_id, std::move(intervals), static_cast<std::uint64_t>(expected),
        r.optional_string("notes"));
    reply(res, {{"session_id", session_id}, {"version", version}});
  }

  void serve_media(const VideoRecord& video, httplib::Response& res) {
    fs::path path(video.uri);
    if (path.is_relative()) path = service.store().root() / path;
    std::error_code ec;
    if (video.uri.empty() || !fs::is_regular_file(path, ec)) {
      throw not_found("no media for video '" + video.video_id + "'");
    }
    const auto size = static_cast<std::size_t>(fs::file_size(path));
    res.set_content_provider(
        size, media_type(path),
        [path](std::size_t offset, std::size_t length, httplib::DataSink& sink) {
          std::ifstream in(path, std::ios::binary);
          in.seekg(static_cast<std::streamoff>(offset));
          std::vector<char> buf(std::min<std::size_t>(length, 64 * 1024));
          in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
          const auto got = static_cast<std::size_t>(in.gcount());
          if (got == 0) return false;
          return sink.write(buf.data(), got);
        });
  }
};

AnnotationServer::AnnotationServer(AnnotationService& service)
    : impl_(std::make_unique<Impl>(service)) {}

AnnotationServer::~AnnotationServer() { stop(); }

int AnnotationServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw io_error("cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void AnnotationServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw io_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void AnnotationServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace ja
