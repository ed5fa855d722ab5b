#include <gtest/gtest.h>

#include <algorithm>

#include "ja/error.hpp"
#include "ja/eval/radar.hpp"
#include "ja/eval/ranking.hpp"

namespace ja {
namespace {

constexpr Label S = Label::kStrong, M = Label::kModerate, P = Label::kPoor;

AlignmentReport report(std::string rater, PromptCondition c, double macro_f1,
                       std::array<double, 3> class_f1 = {0.5, 0.7, 0.2}) {
  AlignmentReport r;
  r.rater_id = std::move(rater);
  r.condition = c;
  r.model_name = "m";
  for (std::size_t i = 0; i < 3; ++i) {
    r.per_class[i] = {class_f1[i], class_f1[i], class_f1[i]};
  }
  r.macro = {macro_f1, macro_f1, macro_f1};
  return r;
}

std::vector<AlignmentReport> four_conditions() {
  std::vector<AlignmentReport> out;
  for (std::size_t i = 0; i < kConditionGrid.size(); ++i) {
    auto r = compute_alignment(
        std::vector<JudgementOutput>{{0, S, {}, {}}, {1, M, {}, {}}, {2, M, {}, {}}},
        SegmentLabelSet{"SLP1", "v", {S, M, P}}, kConditionGrid[i], "m");
    out.push_back(r);
  }
  return out;
}

TEST(RadarTest, ShapeFourConditionsOneRater) {
  const auto reports = four_conditions();
  const auto doc = export_radar(reports);
  ASSERT_EQ(doc["series"].size(), 4u);
  for (const auto& s : doc["series"]) {
    ASSERT_EQ(s["values"].size(), 9u);
    EXPECT_EQ(s["rater_id"], "SLP1");
  }
  EXPECT_EQ(doc["axes"].size(), 9u);
  EXPECT_EQ(doc["axes"][0], "strong.precision");
  EXPECT_EQ(doc["axes"][8], "poor.f1");
}

TEST(RadarTest, EmptyClassCarriesZeros) {
  const auto doc = export_radar(four_conditions());
  // No Poor predictions: the last three values are present and zero.
  const auto& values = doc["series"][0]["values"];
  EXPECT_EQ(values[6], 0.0);
  EXPECT_EQ(values[7], 0.0);
  EXPECT_EQ(values[8], 0.0);
}

TEST(RadarTest, RoundTrip) {
  const auto reports = four_conditions();
  const auto doc = export_radar(reports);
  EXPECT_EQ(parse_radar(doc), reports);
  EXPECT_EQ(parse_radar(nlohmann::json::parse(doc.dump())), reports);
}

TEST(RadarTest, TamperedSeriesRejected) {
  auto doc = export_radar(four_conditions());
  doc["series"][1]["values"][0] = 0.99;
  EXPECT_THROW(parse_radar(doc), ValidationError);
  EXPECT_THROW(parse_radar(nlohmann::json::object()), ValidationError);
  EXPECT_THROW(export_radar(std::vector<AlignmentReport>{}), Error);
}

TEST(RadarTest, SummaryTable) {
  const auto table = radar_summary_table(four_conditions());
  EXPECT_NE(table.find("zero_plain"), std::string::npos);
  EXPECT_NE(table.find("few_reasoning"), std::string::npos);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 5);
  EXPECT_NE(table.find("1.00"), std::string::npos);
}

constexpr PromptCondition kZP{Shots::kZero, Style::kNonReasoning};

TEST(RankingTest, HigherMacroF1First) {
  const std::vector<AlignmentReport> reports = {report("B", kZP, 0.60),
                                                report("A", kZP, 0.70)};
  const auto ranking = compare_raters(reports);
  ASSERT_EQ(ranking.size(), 1u);
  EXPECT_EQ(ranking[0].by_macro_f1[0].rater_id, "A");
  EXPECT_EQ(ranking[0].by_macro_f1[0].rank, 1);
  EXPECT_EQ(ranking[0].by_macro_f1[1].rank, 2);
  EXPECT_FALSE(ranking[0].has_ties);
}

TEST(RankingTest, TiesReportedExplicitly) {
  const std::vector<AlignmentReport> reports = {report("A", kZP, 0.65),
                                                report("B", kZP, 0.65),
                                                report("C", kZP, 0.40)};
  const auto r = compare_raters(reports)[0];
  EXPECT_TRUE(r.has_ties);
  ASSERT_EQ(r.by_macro_f1.size(), 3u);
  EXPECT_EQ(r.by_macro_f1[0].rank, 1);
  EXPECT_EQ(r.by_macro_f1[1].rank, 1);
  EXPECT_EQ(r.by_macro_f1[2].rank, 3);
  EXPECT_EQ(to_json(r)["has_ties"], true);
}

TEST(RankingTest, ClassOrderingsWithTiers) {
  const std::vector<AlignmentReport> reports = {
      report("A", kZP, 0.5, {0.6, 0.8, 0.2}), report("B", kZP, 0.5, {0.4, 0.4, 0.1})};
  const auto r = compare_raters(reports)[0];
  ASSERT_EQ(r.class_orderings.size(), 2u);
  EXPECT_EQ(r.class_orderings[0].tiers,
            (std::vector<std::vector<Label>>{{M}, {S}, {P}}));
  EXPECT_EQ(r.class_orderings[1].tiers,
            (std::vector<std::vector<Label>>{{S, M}, {P}}));
  EXPECT_EQ(r.by_class_f1[index_of(S)][0].rater_id, "A");
}

TEST(RankingTest, GroupsByConditionInGridOrder) {
  const PromptCondition fr{Shots::kFew, Style::kReasoning};
  const std::vector<AlignmentReport> reports = {
      report("A", fr, 0.3), report("B", fr, 0.4), report("A", kZP, 0.9),
      report("B", kZP, 0.1)};
  const auto r = compare_raters(reports);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].condition, kZP);
  EXPECT_EQ(r[1].condition, fr);
  EXPECT_EQ(r[1].by_macro_f1[0].rater_id, "B");
}

TEST(RankingTest, NeedsTwoRaters) {
  EXPECT_THROW(compare_raters(std::vector{report("A", kZP, 0.5)}), Error);
  EXPECT_THROW(compare_raters(std::vector{report("A", kZP, 0.5),
                                          report("A", kZP, 0.6)}),
               Error);
}

}  // namespace
}  // namespace ja
