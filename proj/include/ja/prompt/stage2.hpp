#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ja/prompt/behaviour.hpp"
#include "ja/prompt/exemplars.hpp"
#include "ja/prompt/prompt.hpp"
#include "ja/prompt/templates.hpp"

namespace ja {

struct Stage2Options {
  // Render the engagement cue line for records that carry one.
  bool engagement = false;
  // Age-band guidance inserted ahead of the examples, e.g. cue priorities
  // for a developmental stage. Empty renders nothing.
  std::string developmental_note;
};

// Judgement prompt for one batch of records. Few-shot conditions require an
// exemplar triplet and zero-shot conditions forbid one (invalid-input
// otherwise). Exemplars render in Strong/Moderate/Poor order with their
// reasoning line only under the reasoning style. Records render in the
// bracketed "[Parent] ... [Child] ..." style and are numbered from 1.
RenderedPrompt render_stage2_prompt(
    std::span<const BehaviourRecord> records, PromptCondition condition,
    const std::optional<ExemplarTriplet>& exemplars,
    const TemplateStore& templates, const Stage2Options& options = {});

// One cue line in bracket style: "Gaze: [Parent] Looked at ... [Child] ...".
std::string bracket_line(const BehaviourRecord& record, CueField field);

// Observation block for a record: Gaze, Action, Vocalisation lines (and
// Engagement when requested and present).
std::string observation_block(const BehaviourRecord& record,
                              bool engagement = false);

struct Stage2Parse {
  // Ordered by segment index; segment_index is the marker number minus one.
  std::vector<JudgementOutput> outputs;
  std::vector<std::string> warnings;
};

// Non-reasoning style reads "Segment N: Label" lines; reasoning style reads
// Observation/Reasoning/Judgement triples (either spelling of Judgement),
// numbered by the nearest "Segment N" heading or sequentially. Labels are
// case-insensitive and may carry brackets or emphasis. A repeated segment
// number keeps the last answer and records a warning.
//
// Throws ParseError (raw text attached) when nothing parses and
// InvalidLabelError for a label outside Strong/Moderate/Poor.
Stage2Parse parse_stage2_response(const std::string& text, Style style);

// Canonical response text for `outputs` in the given style. Markers are
// segment_index + 1.
std::string emit_stage2_response(std::span<const JudgementOutput> outputs,
                                 Style style);

// Reads the segment blocks of a rendered judgement prompt back into
// records. Sentences regain their "The parent"/"The child" subject; segment
// refs come from the prompt. Used by the offline mock backend.
std::vector<BehaviourRecord> read_prompt_records(const RenderedPrompt& prompt);

}  // namespace ja
