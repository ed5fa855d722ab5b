#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ja/gateway/gateway.hpp"
#include "ja/pipeline/commands.hpp"
#include "ja/prompt/templates.hpp"

namespace ja::detail {

struct ProjectContext {
  ProjectManifest manifest;
  PipelineConfig config;
  TemplateStore templates;
  std::string manifest_hash;
};

ProjectContext load_context(const ProjectStore& store);

std::string hash_json(const nlohmann::json& j);

// Splits `items` into consecutive chunks of `size` (0 keeps one chunk).
template <typename T>
std::vector<std::vector<T>> chunked(const std::vector<T>& items, std::size_t size) {
  std::vector<std::vector<T>> out;
  if (size == 0) size = items.size();
  for (std::size_t i = 0; i < items.size(); i += size) {
    out.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(i),
                     items.begin() + static_cast<std::ptrdiff_t>(
                                         std::min(items.size(), i + size)));
  }
  return out;
}

std::shared_ptr<Backend> backend_for(const ModelCommandOptions& options,
                                     const BackendConfig& config);

// Starts or resumes a run. Returns std::nullopt when a sealed run with the
// same id already exists.
std::optional<RunRecord> open_run(const ProjectStore& store, RunRecord run);

// Runs requests through a journalled gateway in the run directory, resuming
// from any earlier journal of the same run.
std::vector<InvokeOutcome> invoke_journalled(const ProjectStore& store,
                                             const std::string& run_id,
                                             std::shared_ptr<Backend> backend,
                                             const BackendConfig& config,
                                             int max_parallel,
                                             const Sleeper& sleeper,
                                             std::span<const ModelRequest> requests);

// Writes the named artifacts, lists them in run.json and seals the run when
// `seal` is set.
void finish_run(const ProjectStore& store, RunRecord run,
                const std::map<std::string, std::string>& artifacts, bool seal);

RunError error_from(const std::string& video_id, const std::string& stage,
                    std::exception_ptr error);

}  // namespace ja::detail
