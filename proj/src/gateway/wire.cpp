#include "ja/gateway/wire.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ja/gateway/errors.hpp"

namespace ja {
namespace {

using nlohmann::json;

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw configuration_error("endpoint '" + url + "' has no scheme");
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

// Inline payload for a media item: its bytes, or a readable local file.
std::optional<std::string> media_payload(const MediaItem& m) {
  if (m.bytes) return m.bytes;
  if (m.locator.find("://") != std::string::npos) return std::nullopt;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(m.locator, ec)) return std::nullopt;
  std::ifstream in(m.locator, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

json build_wire_body(const ModelRequest& request, WireDialect dialect) {
  if (dialect == WireDialect::kGemini) {
    json parts = json::array();
    parts.push_back({{"text", request.prompt.text}});
    for (const auto& m : request.media) {
      if (const auto payload = media_payload(m)) {
        parts.push_back({{"inline_data",
                          {{"mime_type", m.mime_type},
                           {"data", httplib::detail::base64_encode(*payload)}}}});
      } else {
        parts.push_back(
            {{"file_data", {{"mime_type", m.mime_type}, {"file_uri", m.locator}}}});
      }
    }
    return {{"contents", json::array({{{"role", "user"}, {"parts", parts}}})},
            {"generationConfig",
             {{"temperature", request.decoding.temperature},
              {"maxOutputTokens", request.decoding.max_output_tokens}}}};
  }

  json content = json::array();
  content.push_back({{"type", "text"}, {"text", request.prompt.text}});
  for (const auto& m : request.media) {
    std::string url = m.locator;
    if (const auto payload = media_payload(m)) {
      url = "data:" + m.mime_type + ";base64," +
            httplib::detail::base64_encode(*payload);
    }
    content.push_back({{"type", "video_url"}, {"video_url", {{"url", url}}}});
  }
  json message = {{"role", "user"}};
  if (request.media.empty()) {
    message["content"] = request.prompt.text;
  } else {
    message["content"] = content;
  }
  return {{"model", request.model_name},
          {"temperature", request.decoding.temperature},
          {"max_tokens", request.decoding.max_output_tokens},
          {"messages", json::array({message})}};
}

std::string extract_wire_text(const json& body, WireDialect dialect) {
  try {
    if (dialect == WireDialect::kGemini) {
      std::string out;
      for (const auto& part :
           body.at("candidates").at(0).at("content").at("parts")) {
        if (part.contains("text")) out += part.at("text").get<std::string>();
      }
      if (!out.empty()) return out;
    } else {
      const auto& content = body.at("choices").at(0).at("message").at("content");
      if (content.is_string()) return content.get<std::string>();
    }
  } catch (const json::exception&) {
  }
  throw BackendError("response body carries no candidate text", false);
}

WireBackend::WireBackend(BackendConfig config) : config_(std::move(config)) {
  split_url(config_.endpoint);
}

std::string WireBackend::id() const {
  return "wire:" + config_.name;
}

BackendReply WireBackend::call(const ModelRequest& request) {
  httplib::Headers headers;
  if (!config_.credential_env.empty()) {
    const char* key = std::getenv(config_.credential_env.c_str());
    if (!key || !*key) {
      throw CredentialError("environment variable " + config_.credential_env +
                            " is not set");
    }
    if (config_.dialect == WireDialect::kGemini) {
      headers.emplace("x-goog-api-key", key);
    } else {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  const Url url = split_url(config_.endpoint);
  httplib::Client client(url.origin);
  client.set_connection_timeout(std::chrono::seconds(config_.timeout_s));
  client.set_read_timeout(std::chrono::seconds(config_.timeout_s));
  client.set_write_timeout(std::chrono::seconds(config_.timeout_s));

  const std::string body = build_wire_body(request, config_.dialect).dump();
  const auto start = std::chrono::steady_clock::now();
  const auto result = client.Post(url.path, headers, body, "application/json");
  const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  if (!result) {
    throw BackendError("request to " + url.origin + " failed: " +
                           httplib::to_string(result.error()),
                       true);
  }
  const int status = result->status;
  if (status == 401 || status == 403) {
    throw CredentialError("backend refused credentials (HTTP " +
                          std::to_string(status) + ")");
  }
  if (status == 429 || status >= 500) {
    throw BackendError("HTTP " + std::to_string(status), true, status);
  }
  if (status != 200) {
    throw BackendError("HTTP " + std::to_string(status) + ": " + result->body,
                       false, status);
  }
  json parsed;
  try {
    parsed = json::parse(result->body);
  } catch (const json::exception&) {
    throw BackendError("response body is not JSON", false, status);
  }
  return {extract_wire_text(parsed, config_.dialect), latency};
}

}  // namespace ja
