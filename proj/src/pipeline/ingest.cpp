#include <set>

#include "ja/core/segmentation.hpp"
#include "ja/pipeline/commands.hpp"
#include "run_support.hpp"

namespace ja {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string describe_issues(const std::vector<ValidationIssue>& issues) {
  std::string out = std::to_string(issues.size()) + " validation issue(s)";
  for (const auto& i : issues) out += "\n  " + i.path + ": " + i.message;
  return out;
}

}  // namespace

ValidationFailures::ValidationFailures(std::vector<ValidationIssue> issues)
    : Error(ErrorKind::kValidation, describe_issues(issues)),
      issues_(std::move(issues)) {}

std::vector<ValidationIssue> validate_manifest_document(const json& j) {
  std::vector<ValidationIssue> issues;
  auto record = [&](const ValidationError& e) {
    const std::string what = e.what();
    issues.push_back({e.path(), what.substr(std::min(what.size(), e.path().size() + 2))});
  };
  if (!j.is_object()) return {{"manifest", "expected an object"}};
  JsonReader r(j, "manifest");
  try {
    if (r.integer("schema_version") > kSchemaVersion) {
      throw VersionError(static_cast<int>(r.integer("schema_version")), kSchemaVersion);
    }
  } catch (const ValidationError& e) {
    record(e);
  }
  if (r.has("segment_rule")) {
    try {
      decode_segment_rule(j.at("segment_rule"), r.path_of("segment_rule"));
    } catch (const ValidationError& e) {
      record(e);
    }
  }
  if (!j.contains("videos") || !j.at("videos").is_array()) {
    issues.push_back({"manifest.videos", "expected an array"});
    return issues;
  }
  const auto& videos = j.at("videos");
  if (videos.empty()) issues.push_back({"manifest.videos", "no videos"});
  std::set<std::string> seen;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    const auto at = "manifest.videos[" + std::to_string(i) + "]";
    try {
      const auto v = decode_video(videos[i], at);
      if (!seen.insert(v.video_id).second) {
        issues.push_back({at + ".video_id", "duplicate id '" + v.video_id + "'"});
      }
    } catch (const ValidationError& e) {
      record(e);
    }
  }
  return issues;
}

IngestResult ingest(const ProjectStore& store, const IngestOptions& options) {
  const auto doc = parse_json(read_text_file(options.manifest),
                              options.manifest.filename().string());
  auto issues = validate_manifest_document(doc);
  if (!issues.empty()) throw ValidationFailures(std::move(issues));
  const auto manifest = decode_manifest(doc);

  if (options.config) {
    const auto config = parse_json(read_text_file(*options.config), "config");
    parse_pipeline_config(config);
    store.save_config(config);
  }
  if (options.exemplars) {
    store.save_library(read_records<Exemplar>(*options.exemplars, "exemplars"));
  }
  store.save_manifest(manifest);

  IngestResult result;
  result.video_count = manifest.videos.size();
  for (const auto& v : manifest.videos) {
    result.segment_count += segment_video(v, manifest.segment_rule).size();
  }
  return result;
}

bool RunSummary::backend_failed() const {
  for (const auto& e : errors) {
    if (e.kind == to_string(ErrorKind::kBackendUnavailable) ||
        e.kind == to_string(ErrorKind::kCredential)) {
      return true;
    }
  }
  return false;
}

std::vector<fs::path> export_run(const ProjectStore& store, const std::string& run_id,
                                 const fs::path& out) {
  const auto run = store.load_run(run_id);
  std::vector<fs::path> copied;
  for (const auto& rel : run.artifacts) {
    const auto target = out / rel;
    write_file_atomic(target, store.read_artifact(run_id, rel));
    copied.push_back(target);
  }
  write_file_atomic(out / "run.json", canonical_json(encode(run)) + "\n");
  copied.push_back(out / "run.json");
  return copied;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation:
    case ErrorKind::kVersion:
    case ErrorKind::kInvalidInput:
    case ErrorKind::kConfiguration:
    case ErrorKind::kExemplarGap:
    case ErrorKind::kNotFound:
    case ErrorKind::kConflict:
      return 2;
    case ErrorKind::kBackendUnavailable:
    case ErrorKind::kCredential:
      return 3;
    case ErrorKind::kCoverage:
      return 4;
    default:
      return 1;
  }
}

}  // namespace ja
