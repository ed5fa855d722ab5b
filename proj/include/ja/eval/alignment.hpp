#pragma once

#include <array>
#include <span>
#include <string>

#include "json.hpp"
#include "ja/core/types.hpp"
#include "ja/prompt/prompt.hpp"

namespace ja {

// Rows are reference labels, columns predicted labels, both in
// Strong/Moderate/Poor order.
struct ConfusionMatrix {
  std::array<std::array<long long, 3>, 3> counts{};

  long long at(Label reference, Label predicted) const {
    return counts[index_of(reference)][index_of(predicted)];
  }
  long long row_sum(Label reference) const;
  long long column_sum(Label predicted) const;
  long long total() const;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  bool operator==(const ConfusionMatrix&) const = default;
};

// Values rounded half-up to 2 places from exact rationals.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool operator==(const ClassMetrics&) const = default;
};

struct AlignmentReport {
  std::string rater_id;
  PromptCondition condition;
  std::string model_name;
  std::array<ClassMetrics, 3> per_class{};
  ClassMetrics macro;
  ConfusionMatrix confusion;

  const ClassMetrics& of(Label label) const { return per_class[index_of(label)]; }
  bool operator==(const AlignmentReport&) const = default;
};

// Confusion counts for one video. `predicted` must cover exactly the
// segment indices 0..n-1 of `reference` (any order); anything else is
// invalid-input.
ConfusionMatrix confusion_matrix(std::span<const JudgementOutput> predicted,
                                 const SegmentLabelSet& reference);

// Per-class precision = diagonal / column sum (0 for an empty column),
// recall = diagonal / row sum (0 for an empty row), F1 = 2TP/(2TP+FP+FN)
// (0 when TP = 0). Macro values are the exact unweighted class means.
AlignmentReport alignment_from_confusion(const ConfusionMatrix& confusion,
                                         std::string rater_id,
                                         PromptCondition condition,
                                         std::string model_name);

AlignmentReport compute_alignment(std::span<const JudgementOutput> predicted,
                                  const SegmentLabelSet& reference,
                                  PromptCondition condition,
                                  std::string model_name);

nlohmann::json to_json(const AlignmentReport& report);
// Throws ValidationError with a path below `path` for malformed documents.
AlignmentReport alignment_from_json(const nlohmann::json& j,
                                    const std::string& path = "report");

}  // namespace ja
