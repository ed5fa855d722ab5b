#include "ja/store/project_store.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>

#include "ja/core/hash.hpp"
#include "ja/error.hpp"

namespace ja {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Ids become path components, so they must not escape their directory.
const std::string& checked_id(const std::string& id, const char* what) {
  if (id.empty() || id == "." || id == ".." ||
      id.find_first_of("/\\") != std::string::npos) {
    throw invalid_input(std::string("invalid ") + what + " '" + id + "'");
  }
  return id;
}

std::vector<std::string> sorted_subdirs(const fs::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::string> kRunKeys = {
    "schema_version", "run_id",       "created_at",   "stage",
    "condition",      "model_name",   "backend_id",   "config_hash",
    "input_hashes",   "artifacts",    "sealed"};

}  // namespace

json encode(const RunRecord& r) {
  json j = {{"schema_version", kSchemaVersion},
            {"run_id", r.run_id},
            {"created_at", r.created_at},
            {"stage", r.stage},
            {"model_name", r.model_name},
            {"backend_id", r.backend_id},
            {"config_hash", r.config_hash},
            {"input_hashes", r.input_hashes},
            {"artifacts", r.artifacts},
            {"sealed", r.sealed}};
  j["condition"] = r.condition ? json(*r.condition) : json(nullptr);
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) {
    if (!j.contains(it.key())) j[it.key()] = it.value();
  }
  return j;
}

RunRecord decode_run(const json& j, const std::string& path) {
  JsonReader r(j, path);
  const auto version = r.integer("schema_version");
  if (version > kSchemaVersion) {
    throw VersionError(static_cast<int>(version), kSchemaVersion);
  }
  RunRecord run;
  run.run_id = r.string("run_id");
  run.created_at = r.string("created_at");
  run.stage = r.string("stage");
  run.condition = r.optional_string("condition");
  run.model_name = r.string("model_name");
  run.backend_id = r.string("backend_id");
  run.config_hash = r.string("config_hash");
  const auto inputs = r.object("input_hashes");
  for (auto it = j.at("input_hashes").begin(); it != j.at("input_hashes").end();
       ++it) {
    run.input_hashes[it.key()] = inputs.string(it.key());
  }
  const auto& artifacts = r.array("artifacts");
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    if (!artifacts[i].is_string()) {
      throw ValidationError(r.path_of("artifacts") + "[" + std::to_string(i) + "]",
                            "expected a string");
    }
    run.artifacts.push_back(artifacts[i].get<std::string>());
  }
  run.sealed = r.boolean("sealed");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(kRunKeys.begin(), kRunKeys.end(), it.key()) == kRunKeys.end()) {
      run.extra[it.key()] = it.value();
    }
  }
  return run;
}

std::string derive_run_id(const std::string& stage,
                          const std::map<std::string, std::string>& input_hashes,
                          const std::string& config_hash) {
  json j = {{"stage", stage},
            {"inputs", input_hashes},
            {"config", config_hash}};
  return stage + "-" + sha256_hex(canonical_json(j)).substr(0, 16);
}

std::string timestamp_now() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ProjectStore::ProjectStore(fs::path root) : root_(std::move(root)) {}

fs::path ProjectStore::manifest_path() const { return root_ / "project" / "manifest.json"; }
fs::path ProjectStore::config_path() const { return root_ / "project" / "config.json"; }
fs::path ProjectStore::references_path() const {
  return root_ / "project" / "references.jsonl";
}
fs::path ProjectStore::library_path() const {
  return root_ / "exemplars" / "library.jsonl";
}

fs::path ProjectStore::annotations_path(const std::string& rater_id,
                                        const std::string& video_id) const {
  return root_ / "annotations" / checked_id(rater_id, "rater id") /
         (checked_id(video_id, "video id") + ".jsonl");
}

fs::path ProjectStore::run_dir(const std::string& run_id) const {
  return root_ / "runs" / checked_id(run_id, "run id");
}

fs::path ProjectStore::session_path(const std::string& session_id) const {
  return root_ / "sessions" / (checked_id(session_id, "session id") + ".json");
}

ProjectManifest ProjectStore::load_manifest() const {
  return decode_manifest(
      parse_json(read_text_file(manifest_path()), "manifest.json"), "manifest");
}

void ProjectStore::save_manifest(const ProjectManifest& manifest) const {
  write_file_atomic(manifest_path(), canonical_json(encode(manifest)) + "\n");
}

json ProjectStore::load_config() const {
  std::error_code ec;
  if (!fs::exists(config_path(), ec)) return json::object();
  auto j = parse_json(read_text_file(config_path()), "config.json");
  if (!j.is_object()) throw ValidationError("config", "expected an object");
  return j;
}

void ProjectStore::save_config(const json& config) const {
  write_file_atomic(config_path(), canonical_json(config) + "\n");
}

std::vector<Stored<IntervalAnnotation>> ProjectStore::load_annotations(
    const std::string& rater_id, const std::string& video_id) const {
  return read_records<IntervalAnnotation>(annotations_path(rater_id, video_id),
                                          rater_id + "/" + video_id + ".jsonl");
}

void ProjectStore::save_annotations(
    const std::string& rater_id, const std::string& video_id,
    const std::vector<Stored<IntervalAnnotation>>& records) const {
  for (const auto& r : records) {
    if (r.value.rater_id != rater_id || r.value.video_id != video_id) {
      throw invalid_input("annotation of " + r.value.rater_id + "/" +
                          r.value.video_id + " saved under " + rater_id + "/" +
                          video_id);
    }
  }
  write_file_atomic(annotations_path(rater_id, video_id), records_to_jsonl(records));
}

std::vector<std::string> ProjectStore::list_raters() const {
  return sorted_subdirs(root_ / "annotations");
}

std::vector<Stored<Exemplar>> ProjectStore::load_library() const {
  return read_records<Exemplar>(library_path(), "library.jsonl");
}

void ProjectStore::save_library(const std::vector<Stored<Exemplar>>& library) const {
  write_file_atomic(library_path(), records_to_jsonl(library));
}

std::vector<Stored<AdjudicatedReference>> ProjectStore::load_references() const {
  std::error_code ec;
  if (!fs::exists(references_path(), ec)) return {};
  return read_records<AdjudicatedReference>(references_path(), "references.jsonl");
}

void ProjectStore::save_references(
    const std::vector<Stored<AdjudicatedReference>>& refs) const {
  write_file_atomic(references_path(), records_to_jsonl(refs));
}

bool ProjectStore::run_exists(const std::string& run_id) const {
  std::error_code ec;
  return fs::exists(run_dir(run_id) / "run.json", ec);
}

RunRecord ProjectStore::load_run(const std::string& run_id) const {
  return decode_run(parse_json(read_text_file(run_dir(run_id) / "run.json"),
                               run_id + "/run.json"),
                    "run");
}

void ProjectStore::save_run(const RunRecord& run) const {
  if (run_exists(run.run_id) && load_run(run.run_id).sealed) {
    throw conflict("run " + run.run_id + " is sealed");
  }
  write_file_atomic(run_dir(run.run_id) / "run.json", canonical_json(encode(run)) + "\n");
}

std::vector<std::string> ProjectStore::list_runs() const {
  std::vector<std::string> out;
  for (auto& id : sorted_subdirs(root_ / "runs")) {
    if (run_exists(id)) out.push_back(std::move(id));
  }
  return out;
}

void ProjectStore::write_artifact(const std::string& run_id,
                                  const std::string& relative,
                                  const std::string& bytes) const {
  const fs::path rel(relative);
  if (rel.empty() || rel.is_absolute() ||
      std::any_of(rel.begin(), rel.end(), [](const fs::path& p) { return p == ".."; })) {
    throw invalid_input("invalid artifact path '" + relative + "'");
  }
  if (run_exists(run_id) && load_run(run_id).sealed) {
    throw conflict("run " + run_id + " is sealed");
  }
  write_file_atomic(run_dir(run_id) / rel, bytes);
}

std::string ProjectStore::read_artifact(const std::string& run_id,
                                        const std::string& relative) const {
  return read_text_file(run_dir(run_id) / relative);
}

}  // namespace ja
