#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ja/core/hash.hpp"
#include "ja/prompt/prompt.hpp"

namespace ja {

// One clip attached to a description request. Either `bytes` carries the
// payload or `locator` names it (local path or URL).
struct MediaItem {
  std::size_t segment_index = 0;
  std::string locator;
  std::optional<std::string> bytes;
  std::string mime_type = "video/mp4";

  bool operator==(const MediaItem&) const = default;
};

struct Decoding {
  double temperature = 0.0;
  int max_output_tokens = 4096;

  bool operator==(const Decoding&) const = default;
};

struct ModelRequest {
  Stage stage = Stage::kDescribe;
  RenderedPrompt prompt;
  // Only description requests may carry media.
  std::vector<MediaItem> media;
  std::string model_name;
  Decoding decoding;
};

struct ModelResponse {
  // Exactly what the backend returned, kept for audit and replay.
  std::string raw_text;
  std::int64_t latency_ms = 0;
  std::string backend_id;
  int attempt_count = 1;

  bool operator==(const ModelResponse&) const = default;
};

// Throws invalid-input for an empty prompt, a stage mismatch between the
// request and its prompt, media on a judgement request, or a negative
// temperature.
void validate_request(const ModelRequest& request);

// Canonical JSON text of a request (sorted keys, compact). Media payloads
// are represented by their SHA-256 so the text stays small.
std::string canonical_request_json(const ModelRequest& request);

// Lower-case hex SHA-256 of canonical_request_json.
std::string request_hash(const ModelRequest& request);

}  // namespace ja
