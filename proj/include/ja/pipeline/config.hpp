#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ja/core/types.hpp"
#include "ja/gateway/backend.hpp"
#include "ja/gateway/model.hpp"

namespace ja {

struct StageSettings {
  // Segments per request; 0 sends each video whole.
  std::size_t chunk_size = 0;
  // Render the optional engagement cue.
  bool engagement = false;

  bool operator==(const StageSettings&) const = default;
};

// Project configuration document (project/config.json). Every field is
// optional; flags on the command line override it.
//
//   {"backends": {"<name>": {backend entry}},
//    "describe": {"chunk_size", "engagement"},
//    "judge": {"chunk_size", "engagement",
//              "developmental_notes": {"<age band>": "<text>"}},
//    "media": {"slicer": "<command with {input} {start} {end} {output}>",
//              "mime_type": "video/mp4"},
//    "templates_dir": "<dir>",
//    "decoding": {"temperature", "max_output_tokens"}}
struct PipelineConfig {
  std::map<std::string, BackendConfig> backends;
  StageSettings describe;
  StageSettings judge;
  std::map<AgeBand, std::string> developmental_notes;
  std::optional<std::string> slicer;
  std::string media_mime_type = "video/mp4";
  std::optional<std::string> templates_dir;
  Decoding decoding;

  bool operator==(const PipelineConfig&) const = default;
};

PipelineConfig parse_pipeline_config(const nlohmann::json& j,
                                     const std::string& path = "config");
nlohmann::json to_json(const PipelineConfig& config);

// Resolves a --backend value: "mock" or "wire:<name>" naming an entry of
// config.backends (which must be a wire_api entry). Throws a configuration
// error otherwise.
BackendConfig resolve_backend(const PipelineConfig& config,
                              const std::string& selector);

// Parses a condition selection such as "zero", "few,reasoning",
// "zero_plain,few_reasoning" or "all". Shot words (zero, few) and style
// words (reasoning, plain) combine as a cross product, with a missing axis
// meaning both; grid names select single conditions. The result follows
// grid order without duplicates. Throws invalid-input for unknown words.
std::vector<PromptCondition> select_conditions(const std::string& selection);

}  // namespace ja
