#include <cstdio>
#include <cstdlib>

#include "ja/core/hash.hpp"
#include "ja/core/segmentation.hpp"
#include "ja/pipeline/commands.hpp"
#include "ja/prompt/stage1.hpp"
#include "run_support.hpp"

namespace ja {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
  for (auto pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
  return text;
}

// Cuts one clip with the configured external command.
MediaItem slice_clip(const std::string& command, const fs::path& input,
                     const SegmentRef& segment, const fs::path& output,
                     const std::string& mime_type) {
  fs::create_directories(output.parent_path());
  std::string cmd = command;
  cmd = replace_all(cmd, "{input}", shell_quote(input.string()));
  cmd = replace_all(cmd, "{start}", seconds(segment.start_s));
  cmd = replace_all(cmd, "{end}", seconds(segment.end_s));
  cmd = replace_all(cmd, "{output}", shell_quote(output.string()));
  if (std::system(cmd.c_str()) != 0) {
    throw io_error("media slicer failed for " + segment.video_id + " segment " +
                   std::to_string(segment.index));
  }
  return {segment.index, output.string(), read_text_file(output), mime_type};
}

struct Chunk {
  std::string video_id;
  std::vector<SegmentRef> segments;
};

}  // namespace

RunSummary describe(const ProjectStore& store, const ModelCommandOptions& options) {
  const auto ctx = detail::load_context(store);
  const auto backend_config = resolve_backend(ctx.config, options.backend);
  const bool wire = backend_config.kind == BackendKind::kWireApi;
  if (wire && !ctx.config.slicer) {
    throw configuration_error(
        "wire backends need media clips; set media.slicer in the project config");
  }
  const std::size_t chunk_size = options.chunk_size.value_or(ctx.config.describe.chunk_size);
  const bool engagement = options.engagement.value_or(ctx.config.describe.engagement);
  const int max_parallel = options.max_parallel.value_or(backend_config.max_parallel);
  const Stage1Options prompt_options{engagement};

  const auto& template_text = ctx.templates.get(
      engagement ? kStage1EngagementTemplate : kStage1Template);
  json settings = {{"backend", to_json(backend_config)},
                   {"chunk_size", chunk_size},
                   {"engagement", engagement},
                   {"decoding",
                    {{"temperature", ctx.config.decoding.temperature},
                     {"max_output_tokens", ctx.config.decoding.max_output_tokens}}}};
  if (wire) settings["slicer"] = *ctx.config.slicer;

  RunRecord run;
  run.stage = "describe";
  run.input_hashes = {{"manifest", ctx.manifest_hash},
                      {"templates", sha256_hex(template_text)}};
  run.config_hash = detail::hash_json(settings);
  run.run_id = derive_run_id(run.stage, run.input_hashes, run.config_hash);
  run.created_at = timestamp_now();
  run.model_name = backend_config.model_name;
  run.backend_id = backend_config.kind == BackendKind::kMock
                       ? "mock"
                       : "wire:" + backend_config.name;

  RunSummary summary;
  summary.run_id = run.run_id;
  const auto opened = detail::open_run(store, run);
  if (!opened) {
    summary.reused = true;
    summary.sealed = true;
    summary.outputs = read_records<BehaviourRecord>(
                          store.run_dir(run.run_id) / "descriptions.jsonl",
                          "descriptions.jsonl")
                          .size();
    return summary;
  }

  std::vector<Chunk> chunks;
  std::vector<ModelRequest> requests;
  for (const auto& video : ctx.manifest.videos) {
    const auto segments = segment_video(video, ctx.manifest.segment_rule);
    for (auto& part : detail::chunked(segments, chunk_size)) {
      ModelRequest req;
      req.stage = Stage::kDescribe;
      req.prompt = render_stage1_prompt(part, ctx.templates, prompt_options);
      req.model_name = backend_config.model_name;
      req.decoding = ctx.config.decoding;
      if (wire) {
        fs::path input(video.uri);
        if (input.is_relative()) input = store.root() / input;
        for (const auto& seg : part) {
          req.media.push_back(slice_clip(
              *ctx.config.slicer, input, seg,
              store.run_dir(run.run_id) / "clips" /
                  (video.video_id + "_" + std::to_string(seg.index) + ".clip"),
              ctx.config.media_mime_type));
        }
      }
      chunks.push_back({video.video_id, std::move(part)});
      requests.push_back(std::move(req));
    }
  }

  const auto outcomes = detail::invoke_journalled(
      store, run.run_id, detail::backend_for(options, backend_config), backend_config,
      max_parallel, options.sleeper, requests);

  std::vector<BehaviourRecord> records;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& chunk = chunks[i];
    if (!outcomes[i].ok()) {
      summary.errors.push_back(detail::error_from(chunk.video_id, "describe",
                                                  outcomes[i].error));
      continue;
    }
    try {
      const auto parsed = parse_stage1_response(outcomes[i].response->raw_text,
                                                chunk.segments, engagement);
      records.insert(records.end(), parsed.records.begin(), parsed.records.end());
      for (const auto& issue : parsed.issues) {
        summary.errors.push_back({chunk.video_id, "describe", to_string(issue.kind),
                                  "segment " + std::to_string(issue.segment_number) +
                                      ": " + issue.message});
      }
    } catch (const Error& e) {
      summary.errors.push_back({chunk.video_id, "describe", to_string(e.kind()), e.what()});
    }
  }

  summary.outputs = records.size();
  summary.sealed = !summary.backend_failed();
  detail::finish_run(store, *opened,
                     {{"descriptions.jsonl", records_to_jsonl(records)},
                      {"errors.jsonl", records_to_jsonl(summary.errors)}},
                     summary.sealed);
  return summary;
}

}  // namespace ja
