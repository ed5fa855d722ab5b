#include "ja/core/labelling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ja/core/rounding.hpp"
#include "ja/error.hpp"

namespace ja {
namespace {

constexpr double kTimeEpsilon = 1e-9;

std::string describe(const IntervalAnnotation& iv) {
  return std::string(to_string(iv.mark)) + " [" + std::to_string(iv.start_s) +
         ", " + std::to_string(iv.end_s) + ")";
}

double overlap(double a_start, double a_end, double b_start, double b_end) {
  return std::max(0.0, std::min(a_end, b_end) - std::max(a_start, b_start));
}

}  // namespace

void validate_intervals(std::span<const IntervalAnnotation> intervals,
                        double duration_s) {
  for (const auto& iv : intervals) {
    if (!std::isfinite(iv.start_s) || !std::isfinite(iv.end_s) ||
        iv.end_s <= iv.start_s) {
      throw invalid_input("interval " + describe(iv) +
                          " must have end_s > start_s");
    }
    if (iv.start_s < -kTimeEpsilon || iv.end_s > duration_s + kTimeEpsilon) {
      throw invalid_input("interval " + describe(iv) + " lies outside [0, " +
                          std::to_string(duration_s) + "]");
    }
    if (iv.rater_id != intervals.front().rater_id ||
        iv.video_id != intervals.front().video_id) {
      throw invalid_input("intervals mix raters or videos");
    }
  }

  std::vector<const IntervalAnnotation*> sorted;
  sorted.reserve(intervals.size());
  for (const auto& iv : intervals) sorted.push_back(&iv);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->start_s < b->start_s; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->start_s < sorted[i - 1]->end_s - kTimeEpsilon) {
      throw conflict("interval " + describe(*sorted[i]) + " overlaps " +
                     describe(*sorted[i - 1]));
    }
  }
}

SegmentLabelSet map_intervals_to_segments(
    std::span<const IntervalAnnotation> intervals,
    std::span<const SegmentRef> segments, const std::string& rater_id) {
  if (segments.empty()) throw invalid_input("no segments to label");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].index != i) {
      throw invalid_input("segments must be indexed 0..n-1 in order");
    }
  }
  validate_intervals(intervals, segments.back().end_s);
  if (!intervals.empty() && !segments.front().video_id.empty() &&
      intervals.front().video_id != segments.front().video_id) {
    throw invalid_input("intervals belong to video '" +
                        intervals.front().video_id + "', segments to '" +
                        segments.front().video_id + "'");
  }

  SegmentLabelSet out;
  out.rater_id = intervals.empty() ? rater_id : intervals.front().rater_id;
  out.video_id =
      intervals.empty() ? segments.front().video_id : intervals.front().video_id;
  out.labels.assign(segments.size(), Label::kModerate);

  for (std::size_t i = 0; i < segments.size(); ++i) {
    double strong = 0.0;
    double poor = 0.0;
    for (const auto& iv : intervals) {
      const double o =
          overlap(segments[i].start_s, segments[i].end_s, iv.start_s, iv.end_s);
      (iv.mark == Mark::kStrong ? strong : poor) += o;
    }
    if (strong <= kTimeEpsilon && poor <= kTimeEpsilon) continue;
    if (std::fabs(strong - poor) <= kTimeEpsilon) continue;
    out.labels[i] = strong > poor ? Label::kStrong : Label::kPoor;
  }
  return out;
}

std::vector<ConsensusLabel> aggregate_consensus(
    std::span<const SegmentLabelSet> label_sets) {
  if (label_sets.size() < 2) {
    throw invalid_input("consensus needs at least two raters, got " +
                        std::to_string(label_sets.size()));
  }
  const std::size_t n = label_sets.front().labels.size();
  for (const auto& set : label_sets) {
    if (set.labels.size() != n || set.video_id != label_sets.front().video_id) {
      throw invalid_input("label sets do not cover identical segments");
    }
  }

  const std::size_t raters = label_sets.size();
  std::vector<ConsensusLabel> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<int, 3> votes{};
    for (const auto& set : label_sets) ++votes[index_of(set.labels[i])];
    out[i].index = i;
    for (Label label : kAllLabels) {
      const int v = votes[index_of(label)];
      if (2 * static_cast<std::size_t>(v) > raters) {
        out[i].label = label;
        out[i].agreeing_count = v;
      }
    }
  }
  return out;
}

std::vector<Label> flatten(std::span<const SegmentLabelSet> label_sets) {
  std::vector<Label> out;
  for (const auto& set : label_sets) {
    out.insert(out.end(), set.labels.begin(), set.labels.end());
  }
  return out;
}

DistributionReport distribution_from_counts(std::array<long long, 3> counts) {
  DistributionReport report;
  report.counts = counts;
  const long long total = report.total();
  if (total <= 0) throw invalid_input("distribution of zero labels");
  for (std::size_t i = 0; i < 3; ++i) {
    if (counts[i] < 0) throw invalid_input("negative label count");
    report.percentages[i] =
        round_half_up(Fraction::ratio(100 * counts[i], total), 1);
  }
  return report;
}

DistributionReport label_distribution(std::span<const Label> labels) {
  if (labels.empty()) throw invalid_input("distribution of zero labels");
  std::array<long long, 3> counts{};
  for (Label label : labels) ++counts[index_of(label)];
  return distribution_from_counts(counts);
}

DistributionReport consensus_distribution(
    std::span<const ConsensusLabel> consensus) {
  std::vector<Label> labels;
  for (const auto& c : consensus) {
    if (c.label) labels.push_back(*c.label);
  }
  return label_distribution(labels);
}

}  // namespace ja
