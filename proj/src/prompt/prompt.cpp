#include "ja/prompt/prompt.hpp"

namespace ja {

std::string_view to_string(Shots shots) {
  return shots == Shots::kZero ? "zero" : "few";
}

std::string_view to_string(Style style) {
  return style == Style::kReasoning ? "reasoning" : "plain";
}

std::string to_string(PromptCondition condition) {
  return std::string(to_string(condition.shots)) + "_" +
         std::string(to_string(condition.style));
}

std::optional<PromptCondition> parse_condition(std::string_view text) {
  for (const auto& c : kConditionGrid) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Stage stage) {
  return stage == Stage::kDescribe ? "describe" : "judge";
}

std::optional<Stage> parse_stage(std::string_view text) {
  if (text == "describe") return Stage::kDescribe;
  if (text == "judge") return Stage::kJudge;
  return std::nullopt;
}

}  // namespace ja
