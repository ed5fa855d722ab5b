#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ja/store/codecs.hpp"
#include "ja/store/json_util.hpp"

namespace ja {

// Metadata of one run directory.
struct RunRecord {
  std::string run_id;
  // ISO-8601 UTC. Taken from SOURCE_DATE_EPOCH when set.
  std::string created_at;
  std::string stage;
  std::optional<std::string> condition;
  std::string model_name;
  std::string backend_id;
  std::string config_hash;
  // Input name -> SHA-256 of its canonical bytes.
  std::map<std::string, std::string> input_hashes;
  // Paths relative to the run directory, sorted.
  std::vector<std::string> artifacts;
  bool sealed = false;
  nlohmann::json extra = nlohmann::json::object();

  bool operator==(const RunRecord&) const = default;
};

nlohmann::json encode(const RunRecord& r);
RunRecord decode_run(const nlohmann::json& j, const std::string& path = "run");

// Content-addressed run id: "<stage>-<first 16 hex of SHA-256 over the
// stage, sorted input hashes and config hash>".
std::string derive_run_id(const std::string& stage,
                          const std::map<std::string, std::string>& input_hashes,
                          const std::string& config_hash);

// Current UTC time, or SOURCE_DATE_EPOCH when that is set.
std::string timestamp_now();

// On-disk layout of a project:
//   project/manifest.json, project/config.json, project/references.jsonl
//   annotations/<rater>/<video>.jsonl
//   exemplars/library.jsonl
//   runs/<run_id>/{run.json, journal.jsonl, ...}
//   sessions/<session_id>.json
class ProjectStore {
 public:
  explicit ProjectStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path manifest_path() const;
  std::filesystem::path config_path() const;
  std::filesystem::path references_path() const;
  std::filesystem::path library_path() const;
  std::filesystem::path annotations_path(const std::string& rater_id,
                                         const std::string& video_id) const;
  std::filesystem::path run_dir(const std::string& run_id) const;
  // Draft state of an annotation session.
  std::filesystem::path session_path(const std::string& session_id) const;

  ProjectManifest load_manifest() const;
  void save_manifest(const ProjectManifest& manifest) const;

  // Project configuration document; an absent file reads as {}.
  nlohmann::json load_config() const;
  void save_config(const nlohmann::json& config) const;

  // Throws not-found when the rater has no file for the video.
  std::vector<Stored<IntervalAnnotation>> load_annotations(
      const std::string& rater_id, const std::string& video_id) const;
  void save_annotations(const std::string& rater_id, const std::string& video_id,
                        const std::vector<Stored<IntervalAnnotation>>& records) const;
  // Rater ids with an annotations directory, sorted.
  std::vector<std::string> list_raters() const;

  std::vector<Stored<Exemplar>> load_library() const;
  void save_library(const std::vector<Stored<Exemplar>>& library) const;

  // Absent overlay reads as empty.
  std::vector<Stored<AdjudicatedReference>> load_references() const;
  void save_references(const std::vector<Stored<AdjudicatedReference>>& refs) const;

  bool run_exists(const std::string& run_id) const;
  RunRecord load_run(const std::string& run_id) const;
  // Writes run.json. Refuses (conflict) to touch a sealed run.
  void save_run(const RunRecord& run) const;
  // Ids of all runs, sorted.
  std::vector<std::string> list_runs() const;

  // Artifact helpers relative to a run directory. Writing into a sealed run
  // is a conflict.
  void write_artifact(const std::string& run_id, const std::string& relative,
                      const std::string& bytes) const;
  std::string read_artifact(const std::string& run_id,
                            const std::string& relative) const;

 private:
  std::filesystem::path root_;
};

// Generic JSONL helpers over a path.
template <typename T>
std::vector<Stored<T>> read_records(const std::filesystem::path& path,
                                    const std::string& name) {
  return decode_stream<T>(parse_jsonl(read_text_file(path), name), name);
}

template <typename T>
std::string records_to_jsonl(const std::vector<Stored<T>>& records) {
  std::vector<nlohmann::json> docs;
  docs.reserve(records.size());
  for (const auto& r : records) docs.push_back(encode(r));
  return to_jsonl(docs);
}

template <typename T>
std::string records_to_jsonl(const std::vector<T>& records) {
  std::vector<nlohmann::json> docs;
  docs.reserve(records.size());
  for (const auto& r : records) docs.push_back(encode(r));
  return to_jsonl(docs);
}

}  // namespace ja
