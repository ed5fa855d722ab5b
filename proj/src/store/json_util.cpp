#include "ja/store/json_util.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "ja/core/text.hpp"
#include "ja/error.hpp"

namespace ja {

using nlohmann::json;

std::string canonical_json(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw io_error("cannot create " + path.parent_path().string() + ": " +
                     ec.message());
    }
  }
  const auto tmp = path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    out.flush();
    if (!out) throw io_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw io_error("cannot replace " + path.string());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw not_found("no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path, e.what());
  }
}

std::vector<json> parse_jsonl(const std::string& text, const std::string& name) {
  std::vector<json> out;
  std::size_t number = 0;
  for (std::string_view line : text::split_lines(text)) {
    ++number;
    if (text::trim(line).empty()) continue;
    out.push_back(parse_json(std::string(line), name + ":" + std::to_string(number)));
  }
  return out;
}

std::string to_jsonl(const std::vector<json>& docs) {
  std::string out;
  for (const auto& d : docs) out += canonical_json(d) + "\n";
  return out;
}

JsonReader::JsonReader(const nlohmann::json& j, std::string path)
    : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ValidationError(path_, "expected an object");
}

std::string JsonReader::path_of(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

bool JsonReader::has(const std::string& key) const {
  return j_.contains(key) && !j_.at(key).is_null();
}

const nlohmann::json& JsonReader::field(const std::string& key) const {
  if (!j_.contains(key)) throw ValidationError(path_of(key), "missing field");
  return j_.at(key);
}

std::string JsonReader::string(const std::string& key) const {
  const auto& v = field(key);
  if (!v.is_string()) throw ValidationError(path_of(key), "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> JsonReader::optional_string(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return string(key);
}

double JsonReader::number(const std::string& key) const {
  const auto& v = field(key);
  if (!v.is_number()) throw ValidationError(path_of(key), "expected a number");
  return v.get<double>();
}

std::int64_t JsonReader::integer(const std::string& key) const {
  const auto& v = field(key);
  if (!v.is_number_integer()) {
    throw ValidationError(path_of(key), "expected an integer");
  }
  return v.get<std::int64_t>();
}

bool JsonReader::boolean(const std::string& key) const {
  const auto& v = field(key);
  if (!v.is_boolean()) throw ValidationError(path_of(key), "expected a boolean");
  return v.get<bool>();
}

JsonReader JsonReader::object(const std::string& key) const {
  return JsonReader(field(key), path_of(key));
}

const nlohmann::json& JsonReader::array(const std::string& key) const {
  const auto& v = field(key);
  if (!v.is_array()) throw ValidationError(path_of(key), "expected an array");
  return v;
}

}  // namespace ja
