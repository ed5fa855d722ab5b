#include "ja/gateway/model.hpp"

#include "json.hpp"
#include "ja/core/hash.hpp"
#include "ja/error.hpp"

namespace ja {

void validate_request(const ModelRequest& request) {
  if (request.prompt.text.empty()) throw invalid_input("request prompt is empty");
  if (request.stage != request.prompt.stage) {
    throw invalid_input("request stage does not match its prompt");
  }
  if (request.stage == Stage::kJudge && !request.media.empty()) {
    throw invalid_input("judgement requests must not carry media");
  }
  if (!(request.decoding.temperature >= 0.0)) {
    throw invalid_input("temperature must be >= 0");
  }
  if (request.decoding.max_output_tokens < 1) {
    throw invalid_input("max_output_tokens must be >= 1");
  }
}

std::string canonical_request_json(const ModelRequest& request) {
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& s : request.prompt.segments) {
    segments.push_back({{"video_id", s.video_id},
                        {"index", s.index},
                        {"start_s", s.start_s},
                        {"end_s", s.end_s}});
  }
  nlohmann::json media = nlohmann::json::array();
  for (const auto& m : request.media) {
    nlohmann::json item = {{"segment_index", m.segment_index},
                           {"locator", m.locator},
                           {"mime_type", m.mime_type}};
    if (m.bytes) item["bytes_sha256"] = sha256_hex(*m.bytes);
    media.push_back(std::move(item));
  }
  nlohmann::json j = {
      {"stage", to_string(request.stage)},
      {"condition", request.prompt.condition
                        ? nlohmann::json(to_string(*request.prompt.condition))
                        : nlohmann::json(nullptr)},
      {"prompt", request.prompt.text},
      {"segments", std::move(segments)},
      {"media", std::move(media)},
      {"model", request.model_name},
      {"decoding",
       {{"temperature", request.decoding.temperature},
        {"max_output_tokens", request.decoding.max_output_tokens}}}};
  return j.dump();
}

std::string request_hash(const ModelRequest& request) {
  return sha256_hex(canonical_request_json(request));
}

}  // namespace ja
