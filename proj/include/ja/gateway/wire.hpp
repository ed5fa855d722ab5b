#pragma once

#include <string>

#include "ja/gateway/backend.hpp"

namespace ja {

// HTTP(S) client for hosted models. The request body follows the selected
// dialect's published schema; the API key is read from the environment
// variable named in the config on every call.
class WireBackend : public Backend {
 public:
  explicit WireBackend(BackendConfig config);
  std::string id() const override;
  BackendReply call(const ModelRequest& request) override;

 private:
  BackendConfig config_;
};

// Request body for `request` in the given dialect. Media with bytes (or a
// readable local file) is inlined as base64; other locators are sent as
// references.
nlohmann::json build_wire_body(const ModelRequest& request,
                               WireDialect dialect);

// Text of the first candidate in a dialect's response body. Throws a
// non-transient BackendError when the body has no text.
std::string extract_wire_text(const nlohmann::json& body, WireDialect dialect);

}  // namespace ja
