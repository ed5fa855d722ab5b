#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ja/error.hpp"
#include "ja/gateway/gateway.hpp"
#include "ja/pipeline/config.hpp"
#include "ja/store/project_store.hpp"

namespace ja {

struct ValidationIssue {
  std::string path;
  std::string message;
  bool operator==(const ValidationIssue&) const = default;
};

// Every problem found in a document, not just the first.
class ValidationFailures : public Error {
 public:
  explicit ValidationFailures(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// Checks a manifest document exhaustively: schema version, a non-empty
// video list, each video entry and id uniqueness.
std::vector<ValidationIssue> validate_manifest_document(const nlohmann::json& j);

struct IngestOptions {
  std::filesystem::path manifest;
  // Optional exemplar library (JSONL) and configuration document to copy in.
  std::optional<std::filesystem::path> exemplars;
  std::optional<std::filesystem::path> config;
};

struct IngestResult {
  std::size_t video_count = 0;
  std::size_t segment_count = 0;
};

// Validates the manifest (throwing ValidationFailures listing every issue,
// or VersionError) and initialises the project under the store root.
IngestResult ingest(const ProjectStore& store, const IngestOptions& options);

// Settings shared by the model-calling commands. Unset values come from
// the project configuration.
struct ModelCommandOptions {
  // "mock" or "wire:<name>".
  std::string backend = "mock";
  std::optional<std::size_t> chunk_size;
  std::optional<bool> engagement;
  std::optional<int> max_parallel;
  // Replaces the backend built from configuration; the selector still
  // decides the recorded configuration. Tests use this to inject failures.
  std::shared_ptr<Backend> backend_override;
  Sleeper sleeper;
};

struct RunSummary {
  std::string run_id;
  std::optional<PromptCondition> condition;
  // The run was already complete and nothing was recomputed.
  bool reused = false;
  bool sealed = false;
  std::size_t outputs = 0;
  // Per-video failures; backend failures leave the run unsealed so a re-run
  // retries them.
  std::vector<RunError> errors;

  bool backend_failed() const;
};

// Stage 1 over every segment of the manifest. One BehaviourRecord per
// segment lands in runs/<id>/descriptions.jsonl. Re-running resumes from
// the journal. A wire backend without a media slicer is a configuration
// error.
RunSummary describe(const ProjectStore& store, const ModelCommandOptions& options);

struct JudgeOptions : ModelCommandOptions {
  std::vector<PromptCondition> conditions{kConditionGrid.begin(),
                                          kConditionGrid.end()};
  // Describe run to judge; defaults to the only sealed describe run of the
  // current manifest.
  std::optional<std::string> from_run;
};

struct ConditionOutcome {
  PromptCondition condition;
  std::optional<RunSummary> run;
  // Set when the condition was skipped, e.g. on an exemplar gap.
  std::optional<ErrorKind> error_kind;
  std::string error_message;
};

// Stage 2 for each selected condition, one run per condition. An exemplar
// gap aborts only the few-shot conditions.
std::vector<ConditionOutcome> judge(const ProjectStore& store,
                                    const JudgeOptions& options);

struct EvaluateOptions {
  // Judge runs to score; defaults to every sealed judge run, which must
  // then hold at most one run per condition.
  std::vector<std::string> runs;
  // Copy the reports here as well.
  std::optional<std::filesystem::path> out;
};

struct EvaluateSummary {
  std::string run_id;
  bool reused = false;
  // Report paths relative to the run directory.
  std::vector<std::string> reports;
  std::string summary_text;
};

// Alignment reports per condition and rater, radar export, label
// distribution, rater ranking and (when an adjudicated overlay exists)
// description accuracy. Throws Error(kCoverage) when judgements and
// annotations do not cover the same segments.
EvaluateSummary evaluate(const ProjectStore& store, const EvaluateOptions& options);

// Copies the artifacts of a run into `out`. Returns the copied paths.
std::vector<std::filesystem::path> export_run(const ProjectStore& store,
                                              const std::string& run_id,
                                              const std::filesystem::path& out);

// Process exit code for an error kind: 2 validation, 3 backend, 4 coverage,
// 1 otherwise.
int exit_code_for(ErrorKind kind);

}  // namespace ja
