#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ja/core/types.hpp"

namespace ja::testing {

// Per-rater count triples (Strong, Moderate, Poor) and the >=2-agree row of
// the published label distribution table.
inline constexpr std::array<long long, 3> kRater1Counts = {155, 472, 11};
inline constexpr std::array<long long, 3> kRater2Counts = {195, 392, 51};
inline constexpr std::array<long long, 3> kRater3Counts = {150, 437, 51};
inline constexpr std::array<long long, 3> kCombinedCounts = {136, 469, 10};
inline constexpr long long kTable3Segments = 638;
inline constexpr long long kTable3Disagreements = 23;

// A 638 x 3 label matrix whose marginals reproduce the table above:
// column r holds rater r's labels, 23 rows are three-way disagreements and
// the remaining 615 rows carry the combined counts. Rows are shuffled with a
// fixed seed so agreement patterns are interleaved.
std::vector<std::array<Label, 3>> table3_label_matrix();

// Random N x 3 label matrix.
std::vector<std::array<Label, 3>> random_label_matrix(std::size_t rows,
                                                      std::uint64_t seed);

// Splits `rows` consecutive segments into the per-video segment counts used
// by the synthetic 26-video manifest (sums to 638).
const std::vector<int>& synthetic_video_segment_counts();

// Per-video Action accuracies whose mean, median, max and min round to the
// published 0.8774 / 0.9464 / 1.0000 / 0.6250. Each accuracy is
// correct/total with total = 2 * segments, so the list can also be realised
// through description scoring.
struct AccuracyFixture {
  int segments;
  int correct;  // out of 2 * segments field instances
};
const std::vector<AccuracyFixture>& table4_action_fixture();

}  // namespace ja::testing
