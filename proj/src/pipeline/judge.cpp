#include <algorithm>
#include <map>

#include "ja/core/hash.hpp"
#include "ja/pipeline/commands.hpp"
#include "ja/prompt/errors.hpp"
#include "ja/prompt/exemplars.hpp"
#include "ja/prompt/stage2.hpp"
#include "run_support.hpp"

namespace ja {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string pick_describe_run(const ProjectStore& store, const std::string& manifest_hash) {
  std::vector<std::string> candidates;
  for (const auto& id : store.list_runs()) {
    const auto run = store.load_run(id);
    if (run.stage == "describe" && run.sealed &&
        run.input_hashes.count("manifest") &&
        run.input_hashes.at("manifest") == manifest_hash) {
      candidates.push_back(id);
    }
  }
  if (candidates.size() == 1) return candidates.front();
  if (candidates.empty()) {
    throw not_found("no completed describe run for the current manifest");
  }
  std::string names;
  for (const auto& c : candidates) names += " " + c;
  throw invalid_input("several describe runs match; choose one with --from:" + names);
}

struct Chunk {
  std::string video_id;
  std::vector<BehaviourRecord> records;
};

json prompt_line(const Chunk& chunk, const ModelRequest& request) {
  json segments = json::array();
  for (const auto& r : chunk.records) segments.push_back(r.segment.index);
  return {{"video_id", chunk.video_id},
          {"segments", segments},
          {"request_hash", request_hash(request)},
          {"text", request.prompt.text}};
}

// Judgements of one condition; records are grouped per video in manifest
// order.
RunSummary judge_condition(const ProjectStore& store, const detail::ProjectContext& ctx,
                           const JudgeOptions& options, const BackendConfig& backend,
                           PromptCondition condition, const std::string& describe_run,
                           const std::string& descriptions_bytes,
                           const std::map<std::string, std::vector<BehaviourRecord>>& by_video,
                           const std::vector<Exemplar>& library,
                           const std::string& library_hash) {
  const std::size_t chunk_size = options.chunk_size.value_or(ctx.config.judge.chunk_size);
  const bool engagement = options.engagement.value_or(ctx.config.judge.engagement);
  const int max_parallel = options.max_parallel.value_or(backend.max_parallel);
  const bool few = condition.shots == Shots::kFew;

  // Exemplar selection happens up front so a gap aborts before any call.
  std::map<std::string, std::optional<ExemplarTriplet>> exemplars;
  for (const auto& video : ctx.manifest.videos) {
    if (few) {
      exemplars[video.video_id] = select_exemplars(
          library, RetrievalContext{video.age_band, video.category}, condition.style);
    } else {
      exemplars[video.video_id] = std::nullopt;
    }
  }

  json notes = json::object();
  for (const auto& [band, text] : ctx.config.developmental_notes) {
    notes[std::string(to_string(band))] = text;
  }
  const auto& template_text = ctx.templates.get(
      condition.style == Style::kReasoning ? kStage2ReasoningTemplate
                                           : kStage2PlainTemplate);
  const json settings = {{"backend", to_json(backend)},
                         {"condition", to_string(condition)},
                         {"chunk_size", chunk_size},
                         {"engagement", engagement},
                         {"developmental_notes", notes},
                         {"decoding",
                          {{"temperature", ctx.config.decoding.temperature},
                           {"max_output_tokens", ctx.config.decoding.max_output_tokens}}}};
  RunRecord run;
  run.stage = "judge";
  run.condition = to_string(condition);
  run.input_hashes = {{"describe_run", describe_run},
                      {"descriptions", sha256_hex(descriptions_bytes)},
                      {"manifest", ctx.manifest_hash},
                      {"templates", sha256_hex(template_text)}};
  if (few) run.input_hashes["library"] = library_hash;
  run.config_hash = detail::hash_json(settings);
  run.run_id = derive_run_id(run.stage, run.input_hashes, run.config_hash);
  run.created_at = timestamp_now();
  run.model_name = backend.model_name;
  run.backend_id = backend.kind == BackendKind::kMock ? "mock" : "wire:" + backend.name;

  RunSummary summary;
  summary.run_id = run.run_id;
  summary.condition = condition;
  const auto opened = detail::open_run(store, run);
  if (!opened) {
    summary.reused = true;
    summary.sealed = true;
    summary.outputs = read_records<VideoJudgement>(
                          store.run_dir(run.run_id) / "judgements.jsonl",
                          "judgements.jsonl")
                          .size();
    return summary;
  }

  std::vector<Chunk> chunks;
  std::vector<ModelRequest> requests;
  for (const auto& video : ctx.manifest.videos) {
    const auto it = by_video.find(video.video_id);
    if (it == by_video.end() || it->second.empty()) {
      summary.errors.push_back({video.video_id, "judge", to_string(ErrorKind::kCoverage),
                                "no descriptions for this video"});
      continue;
    }
    Stage2Options prompt_options;
    prompt_options.engagement = engagement;
    if (const auto n = ctx.config.developmental_notes.find(video.age_band);
        n != ctx.config.developmental_notes.end()) {
      prompt_options.developmental_note = n->second;
    }
    for (auto& part : detail::chunked(it->second, chunk_size)) {
      ModelRequest req;
      req.stage = Stage::kJudge;
      req.prompt = render_stage2_prompt(part, condition, exemplars.at(video.video_id),
                                        ctx.templates, prompt_options);
      req.model_name = backend.model_name;
      req.decoding = ctx.config.decoding;
      chunks.push_back({video.video_id, std::move(part)});
      requests.push_back(std::move(req));
    }
  }

  const auto outcomes = detail::invoke_journalled(
      store, run.run_id, detail::backend_for(options, backend), backend, max_parallel,
      options.sleeper, requests);

  std::vector<VideoJudgement> judgements;
  std::vector<json> prompts;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& chunk = chunks[i];
    prompts.push_back(prompt_line(chunk, requests[i]));
    if (!outcomes[i].ok()) {
      summary.errors.push_back(detail::error_from(chunk.video_id, "judge", outcomes[i].error));
      continue;
    }
    try {
      const auto parsed =
          parse_stage2_response(outcomes[i].response->raw_text, condition.style);
      std::vector<bool> seen(chunk.records.size(), false);
      for (auto out : parsed.outputs) {
        // Markers number the batch from 1; map back to video segments.
        if (out.segment_index >= chunk.records.size()) {
          summary.errors.push_back({chunk.video_id, "judge", to_string(ErrorKind::kStructure),
                                    "answer for segment " +
                                        std::to_string(out.segment_index + 1) +
                                        " outside the batch"});
          continue;
        }
        seen[out.segment_index] = true;
        out.segment_index = chunk.records[out.segment_index].segment.index;
        judgements.push_back({chunk.video_id, out});
      }
      for (std::size_t k = 0; k < seen.size(); ++k) {
        if (!seen[k]) {
          summary.errors.push_back({chunk.video_id, "judge", to_string(ErrorKind::kCoverage),
                                    "no judgement for segment " +
                                        std::to_string(chunk.records[k].segment.index)});
        }
      }
    } catch (const Error& e) {
      summary.errors.push_back({chunk.video_id, "judge", to_string(e.kind()), e.what()});
    }
  }

  summary.outputs = judgements.size();
  summary.sealed = !summary.backend_failed();
  detail::finish_run(store, *opened,
                     {{"judgements.jsonl", records_to_jsonl(judgements)},
                      {"prompts.jsonl", to_jsonl(prompts)},
                      {"errors.jsonl", records_to_jsonl(summary.errors)}},
                     summary.sealed);
  return summary;
}

}  // namespace

std::vector<ConditionOutcome> judge(const ProjectStore& store, const JudgeOptions& options) {
  const auto ctx = detail::load_context(store);
  const auto backend = resolve_backend(ctx.config, options.backend);
  if (options.conditions.empty()) throw invalid_input("no conditions selected");
  const auto describe_run =
      options.from_run ? *options.from_run : pick_describe_run(store, ctx.manifest_hash);
  const auto source = store.load_run(describe_run);
  if (source.stage != "describe" || !source.sealed) {
    throw invalid_input("run " + describe_run + " is not a completed describe run");
  }
  const auto bytes = store.read_artifact(describe_run, "descriptions.jsonl");
  std::map<std::string, std::vector<BehaviourRecord>> by_video;
  for (auto& r : values_of(decode_stream<BehaviourRecord>(
           parse_jsonl(bytes, "descriptions.jsonl"), "descriptions.jsonl"))) {
    by_video[r.segment.video_id].push_back(std::move(r));
  }
  for (auto& [id, records] : by_video) {
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
      return a.segment.index < b.segment.index;
    });
  }

  std::vector<Exemplar> library;
  std::string library_hash;
  const bool any_few = std::any_of(options.conditions.begin(), options.conditions.end(),
                                   [](const auto& c) { return c.shots == Shots::kFew; });
  std::optional<Error> library_error;
  if (any_few) {
    try {
      const auto stored = store.load_library();
      library = values_of(stored);
      library_hash = sha256_hex(records_to_jsonl(stored));
    } catch (const Error& e) {
      library_error = e;
    }
  }

  std::vector<ConditionOutcome> out;
  for (const auto& c : options.conditions) {
    ConditionOutcome outcome{c, std::nullopt, std::nullopt, {}};
    try {
      if (c.shots == Shots::kFew && library_error) throw *library_error;
      outcome.run = judge_condition(store, ctx, options, backend, c, describe_run, bytes,
                                    by_video, library, library_hash);
    } catch (const ExemplarGapError& e) {
      outcome.error_kind = e.kind();
      outcome.error_message = e.what();
    } catch (const Error& e) {
      if (c.shots != Shots::kFew || e.kind() != ErrorKind::kNotFound) throw;
      outcome.error_kind = ErrorKind::kExemplarGap;
      outcome.error_message = std::string("no exemplar library: ") + e.what();
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

}  // namespace ja
