#pragma once

#include <span>
#include <vector>

#include "ja/core/types.hpp"

namespace ja {

// Checks one rater's marks on one video: positive length, inside
// [0, duration_s], and pairwise non-overlapping. Throws invalid-input for
// malformed intervals and conflict for overlaps.
void validate_intervals(std::span<const IntervalAnnotation> intervals,
                        double duration_s);

// Projects interval marks onto segments. A segment takes a mark's label when
// the mark overlaps it by any positive duration; when both kinds overlap, the
// kind with the larger total overlap wins and an exact tie gives Moderate.
// Segments without overlap are Moderate.
//
// `segments` must tile one video from index 0. The rater and video of the
// result come from the intervals, or from `rater_id` and the segments when
// there are none.
SegmentLabelSet map_intervals_to_segments(
    std::span<const IntervalAnnotation> intervals,
    std::span<const SegmentRef> segments, const std::string& rater_id = {});

// Strict-majority consensus across N >= 2 raters: a label is kept when more
// than N/2 raters chose it. All sets must cover the same segment indices.
std::vector<ConsensusLabel> aggregate_consensus(
    std::span<const SegmentLabelSet> label_sets);

// Concatenates per-video label sets of one rater, in the given order.
std::vector<Label> flatten(std::span<const SegmentLabelSet> label_sets);

DistributionReport label_distribution(std::span<const Label> labels);
DistributionReport distribution_from_counts(std::array<long long, 3> counts);

// Distribution over the labels that reached consensus.
DistributionReport consensus_distribution(
    std::span<const ConsensusLabel> consensus);

}  // namespace ja
