#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ja/error.hpp"
#include "ja/prompt/behaviour.hpp"
#include "ja/prompt/prompt.hpp"
#include "ja/prompt/templates.hpp"

namespace ja {

struct Stage1Options {
  // Adds the optional fourth engagement cue to the instruction block.
  bool engagement = false;
};

// Description prompt: the stored instruction block followed by one
// "Segment N (mm:ss–mm:ss)" marker per segment, in the given order.
RenderedPrompt render_stage1_prompt(std::span<const SegmentRef> segments,
                                    const TemplateStore& templates,
                                    const Stage1Options& options = {});

// A problem confined to one segment of a response. The segment is skipped
// in `records` and reported here instead.
struct ParseIssue {
  ErrorKind kind = ErrorKind::kStructure;
  std::size_t segment_number = 0;  // 1-based marker number
  std::optional<Role> role;
  std::optional<CueField> field;
  std::string message;
};

struct Stage1Parse {
  std::vector<BehaviourRecord> records;
  std::vector<ParseIssue> issues;
  // Non-fatal observations, e.g. sentences not in subject-verb-object form.
  std::vector<std::string> warnings;

  // Rethrows the first issue as its typed error (FieldMissingError or
  // StructureError).
  void throw_if_issues() const;
};

// Parses a description response against the segments of the prompt that
// produced it. Tolerates markdown bullets and emphasis, "Vocalization"
// spelling and "none"/"None." for the None token.
//
// Throws ParseError for empty text and StructureError when no role heading
// appears anywhere. Per-segment problems land in Stage1Parse::issues.
Stage1Parse parse_stage1_response(const std::string& text,
                                  std::span<const SegmentRef> segments,
                                  bool engagement = false);

// Canonical response text for `records`, numbered 1..n in order. This is
// the format parse_stage1_response reads most directly; the mock backend
// answers with it.
std::string emit_stage1_response(std::span<const BehaviourRecord> records);

}  // namespace ja
