#include "ja/core/labelling.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "ja/core/segmentation.hpp"
#include "ja/error.hpp"
#include "support/fixtures.hpp"

namespace ja {
namespace {

IntervalAnnotation mark(double start, double end, Mark kind,
                        std::string rater = "r1", std::string video = "v") {
  IntervalAnnotation iv;
  iv.rater_id = std::move(rater);
  iv.video_id = std::move(video);
  iv.start_s = start;
  iv.end_s = end;
  iv.mark = kind;
  return iv;
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

SegmentLabelSet set_of(std::string rater, std::vector<Label> labels) {
  return SegmentLabelSet{std::move(rater), "v", std::move(labels)};
}

class MapIntervalsTest : public ::testing::Test {
 protected:
  std::vector<SegmentRef> segs_ = segment_video(15.0, {}, "v");
};

TEST_F(MapIntervalsTest, AnyPositiveOverlapAssigns) {
  const std::vector ivs = {mark(3, 12, Mark::kStrong)};
  const auto set = map_intervals_to_segments(ivs, segs_);
  EXPECT_EQ(set.labels, std::vector<Label>(3, Label::kStrong));
  EXPECT_EQ(set.rater_id, "r1");
  EXPECT_EQ(set.video_id, "v");
}

TEST_F(MapIntervalsTest, DominantOverlapWins) {
  const std::vector ivs = {mark(0, 3, Mark::kStrong), mark(3, 5, Mark::kPoor)};
  const auto set = map_intervals_to_segments(ivs, segs_);
  EXPECT_EQ(set.labels[0], Label::kStrong);
  EXPECT_EQ(set.labels[1], Label::kModerate);
}

TEST_F(MapIntervalsTest, ExactTieIsModerate) {
  const std::vector ivs = {mark(0, 2.5, Mark::kStrong),
                           mark(2.5, 5, Mark::kPoor)};
  EXPECT_EQ(map_intervals_to_segments(ivs, segs_).labels[0], Label::kModerate);
}

TEST_F(MapIntervalsTest, TouchingBoundaryIsNotOverlap) {
  const std::vector ivs = {mark(5, 10, Mark::kPoor)};
  const auto set = map_intervals_to_segments(ivs, segs_);
  EXPECT_EQ(set.labels, (std::vector{Label::kModerate, Label::kPoor,
                                     Label::kModerate}));
}

TEST_F(MapIntervalsTest, NoIntervalsIsAllModerate) {
  const auto set = map_intervals_to_segments({}, segs_, "r9");
  EXPECT_EQ(set.labels, std::vector<Label>(3, Label::kModerate));
  EXPECT_EQ(set.rater_id, "r9");
}

TEST_F(MapIntervalsTest, IntervalOutsideVideoIsInvalid) {
  const std::vector late = {mark(12, 16, Mark::kStrong)};
  EXPECT_EQ(kind_of([&] { map_intervals_to_segments(late, segs_); }),
            ErrorKind::kInvalidInput);
  const std::vector negative = {mark(-1, 2, Mark::kStrong)};
  EXPECT_EQ(kind_of([&] { map_intervals_to_segments(negative, segs_); }),
            ErrorKind::kInvalidInput);
  const std::vector empty = {mark(4, 4, Mark::kStrong)};
  EXPECT_EQ(kind_of([&] { map_intervals_to_segments(empty, segs_); }),
            ErrorKind::kInvalidInput);
}

TEST_F(MapIntervalsTest, OverlappingIntervalsConflict) {
  const std::vector ivs = {mark(0, 6, Mark::kStrong), mark(5, 8, Mark::kPoor)};
  EXPECT_EQ(kind_of([&] { map_intervals_to_segments(ivs, segs_); }),
            ErrorKind::kConflict);
}

TEST_F(MapIntervalsTest, MixedRatersRejected) {
  const std::vector ivs = {mark(0, 1, Mark::kStrong, "a"),
                           mark(2, 3, Mark::kStrong, "b")};
  EXPECT_EQ(kind_of([&] { map_intervals_to_segments(ivs, segs_); }),
            ErrorKind::kInvalidInput);
}

TEST(MapIntervalsProperty, EverySegmentGetsExactlyOneLabel) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dur(1.0, 300.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double d = dur(rng);
    const auto segs = segment_video(d, {}, "v");
    // Random non-overlapping marks laid left to right.
    std::vector<IntervalAnnotation> ivs;
    std::uniform_real_distribution<double> gap(0.0, 12.0);
    std::uniform_real_distribution<double> len(0.1, 9.0);
    double t = gap(rng);
    while (true) {
      const double end = t + len(rng);
      if (end > d) break;
      ivs.push_back(mark(t, end, rng() % 2 ? Mark::kStrong : Mark::kPoor));
      t = end + gap(rng);
    }
    const auto set = map_intervals_to_segments(ivs, segs);
    ASSERT_EQ(set.labels.size(), segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const bool covered = std::any_of(ivs.begin(), ivs.end(), [&](auto& iv) {
        return iv.start_s < segs[i].end_s && iv.end_s > segs[i].start_s;
      });
      if (!covered) ASSERT_EQ(set.labels[i], Label::kModerate);
    }
  }
}

TEST(ConsensusTest, MajorityAndDisagreement) {
  const std::vector sets = {
      set_of("a", {Label::kStrong, Label::kStrong}),
      set_of("b", {Label::kStrong, Label::kModerate}),
      set_of("c", {Label::kModerate, Label::kPoor}),
  };
  const auto out = aggregate_consensus(sets);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].label, Label::kStrong);
  EXPECT_EQ(out[0].agreeing_count, 2);
  EXPECT_FALSE(out[1].label.has_value());
  EXPECT_EQ(out[1].agreeing_count, 0);
}

TEST(ConsensusTest, UnanimousCountsThree) {
  const std::vector sets = {set_of("a", {Label::kPoor}),
                            set_of("b", {Label::kPoor}),
                            set_of("c", {Label::kPoor})};
  EXPECT_EQ(aggregate_consensus(sets)[0].agreeing_count, 3);
}

TEST(ConsensusTest, FewerThanTwoRatersIsInvalid) {
  const std::vector one = {set_of("a", {Label::kPoor})};
  EXPECT_EQ(kind_of([&] { aggregate_consensus(one); }),
            ErrorKind::kInvalidInput);
}

TEST(ConsensusTest, MismatchedCoverageIsInvalid) {
  const std::vector sets = {set_of("a", {Label::kPoor}),
                            set_of("b", {Label::kPoor, Label::kStrong})};
  EXPECT_EQ(kind_of([&] { aggregate_consensus(sets); }),
            ErrorKind::kInvalidInput);
}

TEST(ConsensusTest, FourRatersNeedThreeVotes) {
  const std::vector sets = {
      set_of("a", {Label::kStrong, Label::kStrong}),
      set_of("b", {Label::kStrong, Label::kStrong}),
      set_of("c", {Label::kPoor, Label::kStrong}),
      set_of("d", {Label::kPoor, Label::kModerate}),
  };
  const auto out = aggregate_consensus(sets);
  EXPECT_FALSE(out[0].label.has_value());
  EXPECT_EQ(out[1].label, Label::kStrong);
  EXPECT_EQ(out[1].agreeing_count, 3);
}

std::vector<SegmentLabelSet> columns(
    const std::vector<std::array<Label, 3>>& rows) {
  std::vector<SegmentLabelSet> sets(3);
  for (int r = 0; r < 3; ++r) {
    sets[r].rater_id = "SLP" + std::to_string(r + 1);
    for (const auto& row : rows) sets[r].labels.push_back(row[r]);
  }
  return sets;
}

TEST(ConsensusTest, Table3MatrixExcludesTwentyThreeSegments) {
  const auto sets = columns(testing::table3_label_matrix());
  ASSERT_EQ(sets[0].labels.size(), 638u);
  EXPECT_EQ(label_distribution(sets[0].labels).counts, testing::kRater1Counts);
  EXPECT_EQ(label_distribution(sets[1].labels).counts, testing::kRater2Counts);
  EXPECT_EQ(label_distribution(sets[2].labels).counts, testing::kRater3Counts);

  const auto consensus = aggregate_consensus(sets);
  const auto present = std::count_if(consensus.begin(), consensus.end(),
                                     [](auto& c) { return c.label.has_value(); });
  EXPECT_EQ(present, 615);
  EXPECT_EQ(consensus_distribution(consensus).counts, testing::kCombinedCounts);
}

TEST(ConsensusProperty, PermutingRatersChangesNothing) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto sets = columns(testing::random_label_matrix(40, seed));
    const auto base = aggregate_consensus(sets);
    std::sort(sets.begin(), sets.end(),
              [](auto& a, auto& b) { return a.rater_id < b.rater_id; });
    do {
      ASSERT_EQ(aggregate_consensus(sets), base);
    } while (std::next_permutation(
        sets.begin(), sets.end(),
        [](auto& a, auto& b) { return a.rater_id < b.rater_id; }));
  }
}

TEST(ConsensusProperty, CountBoundedByThreeWayDisagreements) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rows = testing::random_label_matrix(60, seed);
    const auto consensus = aggregate_consensus(columns(rows));
    const auto three_way = std::count_if(rows.begin(), rows.end(), [](auto& r) {
      return r[0] != r[1] && r[1] != r[2] && r[0] != r[2];
    });
    const auto present = std::count_if(consensus.begin(), consensus.end(),
                                       [](auto& c) { return c.label.has_value(); });
    ASSERT_EQ(present + three_way, static_cast<long>(rows.size()));
  }
}

TEST(DistributionTest, PublishedRowsRoundExactly) {
  const auto r1 = distribution_from_counts(testing::kRater1Counts);
  EXPECT_EQ(r1.percentages, (std::array{24.3, 74.0, 1.7}));
  const auto r2 = distribution_from_counts(testing::kRater2Counts);
  EXPECT_EQ(r2.percentages, (std::array{30.6, 61.4, 8.0}));
  const auto r3 = distribution_from_counts(testing::kRater3Counts);
  EXPECT_EQ(r3.percentages, (std::array{23.5, 68.5, 8.0}));
  const auto combined = distribution_from_counts(testing::kCombinedCounts);
  EXPECT_EQ(combined.percentages, (std::array{22.1, 76.3, 1.6}));
}

TEST(DistributionTest, SingleLabel) {
  const std::vector labels = {Label::kStrong};
  const auto d = label_distribution(labels);
  EXPECT_EQ(d.percentages, (std::array{100.0, 0.0, 0.0}));
  EXPECT_EQ(d.total(), 1);
}

TEST(DistributionTest, HalfUpOnExactTie) {
  // 1/8 = 12.5% exactly; 1/16 = 6.25% -> 6.3
  EXPECT_EQ(distribution_from_counts({1, 15, 0}).percentages[0], 6.3);
  EXPECT_EQ(distribution_from_counts({1, 7, 0}).percentages[0], 12.5);
}

TEST(DistributionTest, EmptyIsInvalid) {
  EXPECT_EQ(kind_of([] { label_distribution({}); }), ErrorKind::kInvalidInput);
}

TEST(DistributionProperty, RoundedPercentagesSumNearHundred) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> c(0, 700);
  for (int i = 0; i < 2000; ++i) {
    std::array<long long, 3> counts{c(rng), c(rng), c(rng)};
    if (counts[0] + counts[1] + counts[2] == 0) continue;
    const auto d = distribution_from_counts(counts);
    const double sum = d.percentages[0] + d.percentages[1] + d.percentages[2];
    ASSERT_NEAR(sum, 100.0, 0.2 + 1e-9);
  }
}

}  // namespace
}  // namespace ja
