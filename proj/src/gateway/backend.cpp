#include "ja/gateway/backend.hpp"

#include "ja/error.hpp"
#include "ja/gateway/mock.hpp"
#include "ja/gateway/wire.hpp"

namespace ja {
namespace {

using nlohmann::json;

template <typename T>
T read_field(const json& j, const std::string& path, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(path + "." + key, "wrong type");
  }
}

}  // namespace

std::string_view to_string(WireDialect dialect) {
  return dialect == WireDialect::kGemini ? "gemini" : "openai_chat";
}

BackendConfig parse_backend_config(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  BackendConfig c;
  c.name = read_field<std::string>(j, path, "name", c.name);
  const auto kind = read_field<std::string>(j, path, "kind", "mock");
  if (kind == "mock") {
    c.kind = BackendKind::kMock;
  } else if (kind == "wire_api") {
    c.kind = BackendKind::kWireApi;
  } else {
    throw ValidationError(path + ".kind", "unknown backend kind '" + kind + "'");
  }
  const auto dialect = read_field<std::string>(j, path, "dialect", "openai_chat");
  if (dialect == "openai_chat") {
    c.dialect = WireDialect::kOpenAiChat;
  } else if (dialect == "gemini") {
    c.dialect = WireDialect::kGemini;
  } else {
    throw ValidationError(path + ".dialect",
                          "unknown dialect '" + dialect + "'");
  }
  c.endpoint = read_field<std::string>(j, path, "endpoint", "");
  c.credential_env = read_field<std::string>(j, path, "credential_env", "");
  c.model_name = read_field<std::string>(j, path, "model", c.model_name);
  c.max_parallel = read_field<int>(j, path, "max_parallel", c.max_parallel);
  c.timeout_s = read_field<int>(j, path, "timeout_s", c.timeout_s);
  if (j.contains("retry")) {
    const auto& r = j.at("retry");
    const std::string rpath = path + ".retry";
    if (!r.is_object()) throw ValidationError(rpath, "expected an object");
    c.retry.max_attempts =
        read_field<int>(r, rpath, "max_attempts", c.retry.max_attempts);
    c.retry.base_backoff_ms = read_field<std::int64_t>(
        r, rpath, "base_backoff_ms", c.retry.base_backoff_ms);
    c.retry.max_backoff_ms = read_field<std::int64_t>(
        r, rpath, "max_backoff_ms", c.retry.max_backoff_ms);
  }
  if (c.max_parallel < 1) {
    throw ValidationError(path + ".max_parallel", "must be >= 1");
  }
  if (c.retry.max_attempts < 1) {
    throw ValidationError(path + ".retry.max_attempts", "must be >= 1");
  }
  if (c.retry.base_backoff_ms < 0 || c.retry.max_backoff_ms < 0) {
    throw ValidationError(path + ".retry", "backoff must be >= 0");
  }
  if (c.timeout_s < 1) throw ValidationError(path + ".timeout_s", "must be >= 1");
  if (c.kind == BackendKind::kWireApi && c.endpoint.empty()) {
    throw ValidationError(path + ".endpoint", "required for wire_api backends");
  }
  return c;
}

json to_json(const BackendConfig& c) {
  return {{"name", c.name},
          {"kind", c.kind == BackendKind::kMock ? "mock" : "wire_api"},
          {"dialect", to_string(c.dialect)},
          {"endpoint", c.endpoint},
          {"credential_env", c.credential_env},
          {"model", c.model_name},
          {"max_parallel", c.max_parallel},
          {"timeout_s", c.timeout_s},
          {"retry",
           {{"max_attempts", c.retry.max_attempts},
            {"base_backoff_ms", c.retry.base_backoff_ms},
            {"max_backoff_ms", c.retry.max_backoff_ms}}}};
}

std::shared_ptr<Backend> make_backend(const BackendConfig& config) {
  if (config.kind == BackendKind::kMock) return std::make_shared<MockBackend>();
  return std::make_shared<WireBackend>(config);
}

}  // namespace ja
