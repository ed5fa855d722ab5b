#include "run_support.hpp"

#include "ja/core/hash.hpp"
#include "ja/gateway/errors.hpp"

namespace ja::detail {

namespace fs = std::filesystem;
using nlohmann::json;

ProjectContext load_context(const ProjectStore& store) {
  ProjectContext ctx{store.load_manifest(),
                     parse_pipeline_config(store.load_config()),
                     TemplateStore::load_default(), {}};
  if (ctx.config.templates_dir) {
    fs::path dir(*ctx.config.templates_dir);
    if (dir.is_relative()) dir = store.root() / dir;
    ctx.templates = TemplateStore::load(dir);
  }
  ctx.manifest_hash = hash_json(encode(ctx.manifest));
  return ctx;
}

std::string hash_json(const json& j) { return sha256_hex(canonical_json(j)); }

std::shared_ptr<Backend> backend_for(const ModelCommandOptions& options,
                                     const BackendConfig& config) {
  return options.backend_override ? options.backend_override : make_backend(config);
}

std::optional<RunRecord> open_run(const ProjectStore& store, RunRecord run) {
  if (store.run_exists(run.run_id)) {
    const auto existing = store.load_run(run.run_id);
    if (existing.sealed) return std::nullopt;
    run.created_at = existing.created_at;
  }
  store.save_run(run);
  return run;
}

std::vector<InvokeOutcome> invoke_journalled(const ProjectStore& store,
                                             const std::string& run_id,
                                             std::shared_ptr<Backend> backend,
                                             const BackendConfig& config,
                                             int max_parallel,
                                             const Sleeper& sleeper,
                                             std::span<const ModelRequest> requests) {
  const auto path = store.run_dir(run_id) / "journal.jsonl";
  const JournalIndex resume(read_journal(path));
  Journal journal(path);
  GatewayOptions options;
  options.run_id = run_id;
  options.retry = config.retry;
  options.max_parallel = max_parallel;
  options.sleeper = sleeper;
  options.journal = &journal;
  options.resume = &resume;
  Gateway gateway(std::move(backend), options);
  return gateway.invoke_all(requests);
}

void finish_run(const ProjectStore& store, RunRecord run,
                const std::map<std::string, std::string>& artifacts, bool seal) {
  for (const auto& [name, bytes] : artifacts) {
    store.write_artifact(run.run_id, name, bytes);
  }
  run.artifacts.clear();
  std::error_code ec;
  if (fs::exists(store.run_dir(run.run_id) / "journal.jsonl", ec)) {
    run.artifacts.push_back("journal.jsonl");
  }
  for (const auto& [name, bytes] : artifacts) run.artifacts.push_back(name);
  std::sort(run.artifacts.begin(), run.artifacts.end());
  run.sealed = seal;
  store.save_run(run);
}

RunError error_from(const std::string& video_id, const std::string& stage,
                    std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const Error& e) {
    return {video_id, stage, to_string(e.kind()), e.what()};
  } catch (const std::exception& e) {
    return {video_id, stage, "internal", e.what()};
  }
}

}  // namespace ja::detail
