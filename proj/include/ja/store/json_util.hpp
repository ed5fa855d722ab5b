#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ja {

// Canonical text of a document: sorted keys, compact separators, shortest
// round-trip numbers. Saving the same value twice yields the same bytes.
std::string canonical_json(const nlohmann::json& j);

// Writes `bytes` to a temporary sibling and renames it over `path`, creating
// parent directories. Throws io error on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

// Throws not-found when the file is missing and io error when unreadable.
std::string read_text_file(const std::filesystem::path& path);

// Parses one JSON document; syntax errors become ValidationError at `path`.
nlohmann::json parse_json(const std::string& text, const std::string& path);

// Splits a JSONL stream into documents. Blank lines are skipped; errors name
// the 1-based line as "<name>:<line>".
std::vector<nlohmann::json> parse_jsonl(const std::string& text,
                                        const std::string& name);

std::string to_jsonl(const std::vector<nlohmann::json>& docs);

// Typed access to an object's fields with ValidationError paths such as
// "videos[3].video_id".
class JsonReader {
 public:
  JsonReader(const nlohmann::json& j, std::string path);

  const nlohmann::json& json() const { return j_; }
  const std::string& path() const { return path_; }
  std::string path_of(const std::string& key) const;
  bool has(const std::string& key) const;

  std::string string(const std::string& key) const;
  std::optional<std::string> optional_string(const std::string& key) const;
  double number(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  JsonReader object(const std::string& key) const;
  const nlohmann::json& array(const std::string& key) const;

 private:
  const nlohmann::json& field(const std::string& key) const;

  const nlohmann::json& j_;
  std::string path_;
};

}  // namespace ja
