#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "json.hpp"
#include "ja/gateway/model.hpp"

namespace ja {

// What a single backend call yields. The gateway adds attempt counting.
struct BackendReply {
  std::string raw_text;
  std::int64_t latency_ms = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;
  // Stable identifier recorded in journals, e.g. "mock" or "wire:gemini".
  virtual std::string id() const = 0;
  // One attempt. Throws BackendError or CredentialError on failure. Must be
  // safe to call from several threads at once.
  virtual BackendReply call(const ModelRequest& request) = 0;
};

enum class BackendKind { kWireApi, kMock };
enum class WireDialect { kOpenAiChat, kGemini };

struct RetryPolicy {
  int max_attempts = 4;
  std::int64_t base_backoff_ms = 500;
  std::int64_t max_backoff_ms = 30000;

  bool operator==(const RetryPolicy&) const = default;
};

struct BackendConfig {
  std::string name = "mock";
  BackendKind kind = BackendKind::kMock;
  WireDialect dialect = WireDialect::kOpenAiChat;
  // Full URL of the generation endpoint.
  std::string endpoint;
  // Name of the environment variable holding the API key. The key itself is
  // never stored.
  std::string credential_env;
  std::string model_name = "mock-model";
  int max_parallel = 4;
  int timeout_s = 120;
  RetryPolicy retry;

  bool operator==(const BackendConfig&) const = default;
};

// Reads a backend entry from project configuration. Throws ValidationError
// (path rooted at `path`) for unknown kinds or dialects, max_parallel < 1,
// max_attempts < 1 or a wire backend without an endpoint.
BackendConfig parse_backend_config(const nlohmann::json& j,
                                   const std::string& path = "backend");
nlohmann::json to_json(const BackendConfig& config);

std::string_view to_string(WireDialect dialect);

std::shared_ptr<Backend> make_backend(const BackendConfig& config);

}  // namespace ja
