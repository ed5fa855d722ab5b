#include "ja/pipeline/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ja/core/text.hpp"
#include "ja/error.hpp"
#include "ja/store/json_util.hpp"

namespace ja {

using nlohmann::json;

namespace {

StageSettings parse_stage(const JsonReader& r) {
  StageSettings s;
  if (r.has("chunk_size")) {
    const auto n = r.integer("chunk_size");
    if (n < 0) throw ValidationError(r.path_of("chunk_size"), "must be >= 0");
    s.chunk_size = static_cast<std::size_t>(n);
  }
  if (r.has("engagement")) s.engagement = r.boolean("engagement");
  return s;
}

json stage_json(const StageSettings& s) {
  return {{"chunk_size", s.chunk_size}, {"engagement", s.engagement}};
}

}  // namespace

PipelineConfig parse_pipeline_config(const json& j, const std::string& path) {
  JsonReader r(j, path);
  PipelineConfig c;
  if (r.has("backends")) {
    const auto backends = r.object("backends");
    for (auto it = backends.json().begin(); it != backends.json().end(); ++it) {
      auto b = parse_backend_config(it.value(), backends.path_of(it.key()));
      b.name = it.key();
      c.backends[it.key()] = b;
    }
  }
  if (r.has("describe")) c.describe = parse_stage(r.object("describe"));
  if (r.has("judge")) {
    const auto judge = r.object("judge");
    c.judge = parse_stage(judge);
    if (judge.has("developmental_notes")) {
      const auto notes = judge.object("developmental_notes");
      for (auto it = notes.json().begin(); it != notes.json().end(); ++it) {
        const auto band = parse_age_band(it.key());
        if (!band) throw ValidationError(notes.path_of(it.key()), "unknown age band");
        c.developmental_notes[*band] = notes.string(it.key());
      }
    }
  }
  if (r.has("media")) {
    const auto media = r.object("media");
    c.slicer = media.optional_string("slicer");
    if (media.has("mime_type")) c.media_mime_type = media.string("mime_type");
    if (c.slicer) {
      for (const char* p : {"{input}", "{start}", "{end}", "{output}"}) {
        if (c.slicer->find(p) == std::string::npos) {
          throw ValidationError(media.path_of("slicer"),
                                std::string("missing placeholder ") + p);
        }
      }
    }
  }
  c.templates_dir = r.optional_string("templates_dir");
  if (r.has("decoding")) {
    const auto d = r.object("decoding");
    if (d.has("temperature")) c.decoding.temperature = d.number("temperature");
    if (d.has("max_output_tokens")) {
      c.decoding.max_output_tokens = static_cast<int>(d.integer("max_output_tokens"));
    }
    if (c.decoding.temperature < 0) {
      throw ValidationError(d.path_of("temperature"), "must be >= 0");
    }
    if (c.decoding.max_output_tokens < 1) {
      throw ValidationError(d.path_of("max_output_tokens"), "must be >= 1");
    }
  }
  return c;
}

json to_json(const PipelineConfig& c) {
  json backends = json::object();
  for (const auto& [name, b] : c.backends) backends[name] = to_json(b);
  json notes = json::object();
  for (const auto& [band, text] : c.developmental_notes) {
    notes[std::string(to_string(band))] = text;
  }
  json judge = stage_json(c.judge);
  judge["developmental_notes"] = notes;
  json media = {{"mime_type", c.media_mime_type}};
  if (c.slicer) media["slicer"] = *c.slicer;
  json j = {{"backends", backends},
            {"describe", stage_json(c.describe)},
            {"judge", judge},
            {"media", media},
            {"decoding",
             {{"temperature", c.decoding.temperature},
              {"max_output_tokens", c.decoding.max_output_tokens}}}};
  if (c.templates_dir) j["templates_dir"] = *c.templates_dir;
  return j;
}

BackendConfig resolve_backend(const PipelineConfig& config,
                              const std::string& selector) {
  if (selector == "mock") return BackendConfig{};
  const std::string prefix = "wire:";
  if (selector.rfind(prefix, 0) != 0) {
    throw configuration_error("unknown backend '" + selector +
                              "'; expected mock or wire:<name>");
  }
  const auto name = selector.substr(prefix.size());
  const auto it = config.backends.find(name);
  if (it == config.backends.end()) {
    throw configuration_error("no backend named '" + name + "' in config.backends");
  }
  if (it->second.kind != BackendKind::kWireApi) {
    throw configuration_error("backend '" + name + "' is not a wire_api backend");
  }
  return it->second;
}

std::vector<PromptCondition> select_conditions(const std::string& selection) {
  std::set<Shots> shots;
  std::set<Style> styles;
  std::vector<PromptCondition> named;
  std::stringstream in(selection);
  std::string word;
  bool any = false;
  while (std::getline(in, word, ',')) {
    const auto w = text::to_lower(text::trim(word));
    if (w.empty()) continue;
    any = true;
    if (w == "all") {
      shots = {Shots::kZero, Shots::kFew};
      styles = {Style::kNonReasoning, Style::kReasoning};
    } else if (w == "zero") {
      shots.insert(Shots::kZero);
    } else if (w == "few") {
      shots.insert(Shots::kFew);
    } else if (w == "reasoning") {
      styles.insert(Style::kReasoning);
    } else if (w == "plain" || w == "non_reasoning" || w == "non-reasoning") {
      styles.insert(Style::kNonReasoning);
    } else if (auto c = parse_condition(w)) {
      named.push_back(*c);
    } else {
      throw invalid_input("unknown condition '" + w + "'");
    }
  }
  if (!any) throw invalid_input("empty condition selection");
  if (!shots.empty() || !styles.empty()) {
    if (shots.empty()) shots = {Shots::kZero, Shots::kFew};
    if (styles.empty()) styles = {Style::kNonReasoning, Style::kReasoning};
  }
  std::vector<PromptCondition> out;
  for (const auto& c : kConditionGrid) {
    const bool crossed = shots.count(c.shots) && styles.count(c.style);
    const bool listed = std::find(named.begin(), named.end(), c) != named.end();
    if (crossed || listed) out.push_back(c);
  }
  return out;
}

}  // namespace ja
