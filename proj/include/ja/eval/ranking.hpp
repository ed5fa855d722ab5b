#pragma once

#include <span>
#include <string>
#include <vector>

#include "ja/eval/alignment.hpp"

namespace ja {

struct RankEntry {
  std::string rater_id;
  double score = 0.0;
  // Competition rank: equal scores share a rank and the next rank skips.
  int rank = 1;
  bool operator==(const RankEntry&) const = default;
};

// Labels of one rater's report ordered by descending F1. Labels with equal
// F1 share a tier.
struct ClassOrdering {
  std::string rater_id;
  std::vector<std::vector<Label>> tiers;
  bool operator==(const ClassOrdering&) const = default;
};

struct ConditionRanking {
  PromptCondition condition;
  // Best first; equal macro F1 values are reported as ties.
  std::vector<RankEntry> by_macro_f1;
  bool has_ties = false;
  // Per label, raters ordered by that label's F1.
  std::array<std::vector<RankEntry>, 3> by_class_f1;
  std::vector<ClassOrdering> class_orderings;
  bool operator==(const ConditionRanking&) const = default;
};

// Groups reports by condition (grid order) and ranks raters within each.
// Throws invalid-input when a condition has fewer than two raters or a
// rater appears twice for one condition.
std::vector<ConditionRanking> compare_raters(
    std::span<const AlignmentReport> reports);

nlohmann::json to_json(const ConditionRanking& ranking);

}  // namespace ja
