#include <gtest/gtest.h>

#include <random>

#include "ja/core/rounding.hpp"
#include "ja/eval/descriptions.hpp"
#include "support/fixtures.hpp"
#include "support/prompt_fixtures.hpp"

namespace ja {
namespace {

TEST(NormaliseTest, Rules) {
  EXPECT_EQ(normalise_text("  The Child   LOOKED\tup.  "), "the child looked up");
  EXPECT_EQ(normalise_text("None."), "none");
  EXPECT_EQ(normalise_text("Really?!..."), "really");
  EXPECT_EQ(normalise_text("a . ,"), "a");
  EXPECT_EQ(normalise_text(""), "");
  EXPECT_EQ(normalise_text("said \"ball\"."), "said \"ball\"");
}

TEST(NormaliseTest, Idempotent) {
  std::mt19937_64 rng(31337);
  const std::string alphabet = "aB .,!?;:\t\n  xYz";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int trial = 0; trial < 5000; ++trial) {
    std::string s(rng() % 24, ' ');
    for (auto& c : s) c = alphabet[pick(rng)];
    const auto once = normalise_text(s);
    EXPECT_EQ(normalise_text(once), once) << '[' << s << ']';
  }
}

TEST(SummariseTest, TwoElementList) {
  const std::vector<double> acc = {0.5, 1.0};
  EXPECT_EQ(summarise_accuracies(acc), (AccuracyStats{0.75, 0.75, 1.0, 0.5}));
  EXPECT_THROW(summarise_accuracies(std::vector<double>{}), Error);
  EXPECT_THROW(summarise_accuracies(std::vector<double>{1.5}), Error);
}

// Builds generated/reference sets whose per-video action accuracies are the
// fixture's fractions; gaze and vocalisation are always correct.
struct Realised {
  std::vector<BehaviourRecord> generated;
  std::vector<AdjudicatedReference> references;
};

Realised realise(const std::vector<testing::AccuracyFixture>& fixture) {
  Realised out;
  for (std::size_t v = 0; v < fixture.size(); ++v) {
    const std::string vid = "video" + std::to_string(v);
    int remaining_correct = fixture[v].correct;
    for (int s = 0; s < fixture[v].segments; ++s) {
      BehaviourRecord rec;
      rec.segment = {vid, static_cast<std::size_t>(s), 5.0 * s, 5.0 * s + 5};
      rec.parent = {"The parent looked at the child.", "The parent waved.",
                    std::nullopt, std::nullopt};
      rec.child = {"The child looked at the ball.", "The child clapped.",
                   "The child said \"hi\".", std::nullopt};
      out.generated.push_back(rec);
      auto refs = references_from_records(std::span(&rec, 1));
      for (auto& r : refs) {
        if (r.field != CueField::kAction) continue;
        if (remaining_correct > 0) {
          --remaining_correct;
          // Case and punctuation differences still count as correct.
          r.reference_text = " " + r.reference_text.substr(0, r.reference_text.size() - 1) + " ";
        } else {
          r.reference_text = "The child rolled the ball.";
          r.correction_kind = CorrectionKind::kContradictionFixed;
        }
      }
      out.references.insert(out.references.end(), refs.begin(), refs.end());
    }
  }
  return out;
}

TEST(ScoreDescriptionsTest, PublishedActionRowStatistics) {
  const auto& fixture = testing::table4_action_fixture();
  const auto data = realise(fixture);
  const auto report = score_descriptions(data.generated, data.references);
  EXPECT_EQ(report.action.stats, (AccuracyStats{0.8774, 0.9464, 1.0, 0.625}));
  ASSERT_EQ(report.action.per_video.size(), fixture.size());
  for (std::size_t v = 0; v < fixture.size(); ++v) {
    EXPECT_EQ(report.action.per_video[v].correct, fixture[v].correct);
    EXPECT_EQ(report.action.per_video[v].total, 2 * fixture[v].segments);
  }
  EXPECT_EQ(report.gaze.stats, (AccuracyStats{1, 1, 1, 1}));
  EXPECT_EQ(report.vocalisation.stats, (AccuracyStats{1, 1, 1, 1}));
}

TEST(ScoreDescriptionsTest, FixtureOracle) {
  // Exact rational mean of the fixture, independent of the scorer.
  Fraction sum;
  for (const auto& f : testing::table4_action_fixture()) {
    sum = sum + Fraction::ratio(f.correct, 2 * f.segments);
  }
  const auto n = static_cast<std::int64_t>(testing::table4_action_fixture().size());
  EXPECT_EQ(round_half_up(sum / n, 4), 0.8774);
}

TEST(ScoreDescriptionsTest, VerbatimReferencesScorePerfect) {
  std::mt19937_64 rng(12);
  const auto records = testing::random_records(rng, 15);
  const auto report =
      score_descriptions(records, references_from_records(records));
  for (CueField f : {CueField::kGaze, CueField::kAction, CueField::kVocalisation}) {
    EXPECT_EQ(report.of(f).stats, (AccuracyStats{1, 1, 1, 1}));
  }
}

TEST(ScoreDescriptionsTest, NoneTokenMatchesNoneReference) {
  const auto records = testing::golden_records();
  auto refs = references_from_records(records);
  for (auto& r : refs) {
    if (r.field == CueField::kVocalisation && r.reference_text == "None") {
      r.reference_text = "none.";
    }
  }
  EXPECT_EQ(score_descriptions(records, refs).vocalisation.stats.min, 1.0);
}

TEST(ScoreDescriptionsTest, MissingReferenceIsCoverageError) {
  const auto records = testing::golden_records();
  auto refs = references_from_records(records);
  std::erase_if(refs, [](const AdjudicatedReference& r) {
    return r.segment_index == 1 && r.role == Role::kChild &&
           r.field == CueField::kGaze;
  });
  try {
    score_descriptions(records, refs);
    FAIL();
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCoverage);
    EXPECT_EQ(e.video_id(), "golden");
    EXPECT_EQ(e.segment_index(), 1u);
    EXPECT_EQ(e.role(), Role::kChild);
    EXPECT_EQ(e.field(), CueField::kGaze);
  }
}

TEST(ScoreDescriptionsTest, DuplicateSegmentRejected) {
  auto records = testing::golden_records();
  records.push_back(records[0]);
  EXPECT_THROW(score_descriptions(records, references_from_records(records)),
               Error);
}

TEST(CorrectionKindTest, RoundTrip) {
  for (auto k : {CorrectionKind::kAccepted, CorrectionKind::kContradictionFixed,
                 CorrectionKind::kGranularityRefined}) {
    EXPECT_EQ(parse_correction_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_correction_kind("rejected"));
}

}  // namespace
}  // namespace ja
