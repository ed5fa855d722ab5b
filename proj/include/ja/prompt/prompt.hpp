#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ja/core/types.hpp"

namespace ja {

enum class Shots { kZero, kFew };
enum class Style { kReasoning, kNonReasoning };

struct PromptCondition {
  Shots shots = Shots::kZero;
  Style style = Style::kNonReasoning;

  bool operator==(const PromptCondition&) const = default;
};

// The four evaluated combinations, in a fixed order.
inline constexpr std::array<PromptCondition, 4> kConditionGrid = {{
    {Shots::kZero, Style::kNonReasoning},
    {Shots::kZero, Style::kReasoning},
    {Shots::kFew, Style::kNonReasoning},
    {Shots::kFew, Style::kReasoning},
}};

// "zero_plain", "zero_reasoning", "few_plain", "few_reasoning".
std::string to_string(PromptCondition condition);
std::optional<PromptCondition> parse_condition(std::string_view text);
std::string_view to_string(Shots shots);
std::string_view to_string(Style style);

enum class Stage { kDescribe, kJudge };
std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view text);

struct RenderedPrompt {
  Stage stage = Stage::kDescribe;
  // Only set for judge prompts.
  std::optional<PromptCondition> condition;
  std::string text;
  // Segments in the order their markers appear in `text`; marker N refers to
  // segments[N - 1].
  std::vector<SegmentRef> segments;

  bool operator==(const RenderedPrompt&) const = default;
};

struct JudgementOutput {
  std::size_t segment_index = 0;
  Label label = Label::kModerate;
  std::optional<std::string> observation_text;
  std::optional<std::string> reasoning_text;

  bool operator==(const JudgementOutput&) const = default;
};

}  // namespace ja
