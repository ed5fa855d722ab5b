#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ja {

enum class AgeBand { k0to2, k2to4, k4to6, k6to8 };

enum class Category { kBehaviourGuidance, kLanguageCognitive, kDailyLife };

// Closed three-value judgement scale. No ordering semantics are implied by
// the enumerator order; it is only used as an array index.
enum class Label { kStrong = 0, kModerate = 1, kPoor = 2 };

inline constexpr std::array<Label, 3> kAllLabels = {Label::kStrong,
                                                    Label::kModerate,
                                                    Label::kPoor};

// Raters only ever mark clear examples; unmarked time is Moderate.
enum class Mark { kStrong, kPoor };

std::string_view to_string(AgeBand band);
std::string_view to_string(Category category);
std::string_view to_string(Label label);
std::string_view to_string(Mark mark);

// Parsers accept the canonical spelling; age bands also accept an en dash.
std::optional<AgeBand> parse_age_band(std::string_view text);
std::optional<Category> parse_category(std::string_view text);
// Case-insensitive.
std::optional<Label> parse_label(std::string_view text);
std::optional<Mark> parse_mark(std::string_view text);

inline Label to_label(Mark mark) {
  return mark == Mark::kStrong ? Label::kStrong : Label::kPoor;
}

inline constexpr std::size_t index_of(Label label) {
  return static_cast<std::size_t>(label);
}

struct VideoRecord {
  std::string video_id;
  std::string uri;
  double duration_s = 0.0;
  AgeBand age_band = AgeBand::k4to6;
  Category category = Category::kDailyLife;
  std::string title;

  bool operator==(const VideoRecord&) const = default;
};

struct SegmentRef {
  std::string video_id;
  std::size_t index = 0;
  double start_s = 0.0;
  double end_s = 0.0;

  double length() const { return end_s - start_s; }
  bool operator==(const SegmentRef&) const = default;
};

struct IntervalAnnotation {
  std::string rater_id;
  std::string video_id;
  double start_s = 0.0;
  double end_s = 0.0;
  Mark mark = Mark::kStrong;
  std::string note;

  bool operator==(const IntervalAnnotation&) const = default;
};

// One rater's projection of interval marks onto the segments of one video.
// labels[i] is the label of segment i; the set is total by construction.
struct SegmentLabelSet {
  std::string rater_id;
  std::string video_id;
  std::vector<Label> labels;

  bool operator==(const SegmentLabelSet&) const = default;
};

struct ConsensusLabel {
  std::size_t index = 0;
  std::optional<Label> label;
  int agreeing_count = 0;

  bool operator==(const ConsensusLabel&) const = default;
};

struct DistributionReport {
  std::array<long long, 3> counts{};
  // Percent of total, rounded half-up to one decimal.
  std::array<double, 3> percentages{};

  long long count(Label label) const { return counts[index_of(label)]; }
  double percentage(Label label) const {
    return percentages[index_of(label)];
  }
  long long total() const { return counts[0] + counts[1] + counts[2]; }
  bool operator==(const DistributionReport&) const = default;
};

}  // namespace ja
