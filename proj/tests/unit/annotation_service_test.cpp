#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "ja/core/labelling.hpp"
#include "ja/core/segmentation.hpp"
#include "ja/error.hpp"
#include "ja/service/annotation_service.hpp"

namespace ja {
namespace {

namespace fs = std::filesystem;

class ServiceFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("ja_service_" + std::to_string(std::random_device{}()));
    ProjectManifest m;
    m.videos.push_back({"v130", "media/v130.mp4", 130.0, AgeBand::k2to4,
                        Category::kDailyLife, "Snack time"});
    m.videos.push_back({"v23", "", 23.0, AgeBand::k0to2,
                        Category::kBehaviourGuidance, ""});
    ProjectStore(root_).save_manifest(m);
    service_ = std::make_unique<AnnotationService>(ProjectStore(root_));
  }
  void TearDown() override { fs::remove_all(root_); }

  static IntervalAnnotation mark(double s, double e, Mark m) {
    return {"", "", s, e, m, ""};
  }

  fs::path root_;
  std::unique_ptr<AnnotationService> service_;
};

std::vector<Label> labels_with(std::size_t n,
                               std::initializer_list<std::pair<std::size_t, Label>> at) {
  std::vector<Label> out(n, Label::kModerate);
  for (const auto& [i, l] : at) out[i] = l;
  return out;
}

TEST_F(ServiceFixture, VideosAndSegments) {
  ASSERT_EQ(service_->list_videos().size(), 2u);
  EXPECT_EQ(service_->get_segments("v130").size(), 26u);
  try {
    service_->get_segments("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotFound);
  }
}

TEST(Service, EmptyProjectListsNoVideos) {
  const auto root = fs::temp_directory_path() / "ja_service_empty";
  AnnotationService service{ProjectStore(root)};
  EXPECT_TRUE(service.list_videos().empty());
}

TEST_F(ServiceFixture, SessionOpensEmptyAtVersionZero) {
  const auto s = service_->get_session("r1@v130");
  EXPECT_EQ(s.version, 0u);
  EXPECT_TRUE(s.intervals.empty());
  EXPECT_FALSE(s.sealed);
  EXPECT_THROW(service_->get_session("r1@missing"), Error);
  EXPECT_THROW(service_->get_session("no-separator"), Error);
}

TEST_F(ServiceFixture, WriteThenProjectLeavesUnmarkedModerate) {
  const auto v = service_->put_intervals(
      "r1@v130", {mark(3, 12, Mark::kStrong), mark(20, 23, Mark::kPoor)}, 0);
  EXPECT_EQ(v, 1u);
  const auto p = service_->get_projection("r1@v130");
  EXPECT_EQ(p.rater_id, "r1");
  EXPECT_EQ(p.video_id, "v130");
  EXPECT_EQ(p.labels, labels_with(26, {{0, Label::kStrong},
                                       {1, Label::kStrong},
                                       {2, Label::kStrong},
                                       {4, Label::kPoor}}));
}

TEST_F(ServiceFixture, StaleVersionIsConflict) {
  service_->put_intervals("r1@v130", {mark(0, 5, Mark::kStrong)}, 0);
  try {
    service_->put_intervals("r1@v130", {}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConflict);
  }
  EXPECT_EQ(service_->get_session("r1@v130").intervals.size(), 1u);
}

TEST_F(ServiceFixture, InvalidIntervalsAreValidationErrors) {
  EXPECT_THROW(service_->put_intervals(
                   "r1@v130",
                   {mark(0, 10, Mark::kStrong), mark(8, 12, Mark::kPoor)}, 0),
               ValidationError);
  EXPECT_THROW(service_->put_intervals("r1@v130", {mark(5, 5, Mark::kStrong)}, 0),
               ValidationError);
  EXPECT_THROW(service_->put_intervals("r1@v130", {mark(120, 131, Mark::kPoor)}, 0),
               ValidationError);
  IntervalAnnotation foreign{"r2", "v130", 0, 1, Mark::kPoor, ""};
  EXPECT_THROW(service_->put_intervals("r1@v130", {foreign}, 0), ValidationError);
  EXPECT_EQ(service_->get_session("r1@v130").version, 0u);
}

TEST_F(ServiceFixture, SubmitSealsAndLandsDocument) {
  service_->put_intervals("r1@v130", {mark(3, 12, Mark::kStrong)}, 0, "calm");
  const auto sealed = service_->submit("r1@v130");
  EXPECT_TRUE(sealed.sealed);
  EXPECT_EQ(sealed.notes, "calm");
  try {
    service_->put_intervals("r1@v130", {}, sealed.version);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConflict);
  }
  EXPECT_THROW(service_->submit("r1@v130"), Error);

  ProjectStore store(root_);
  const auto loaded = values_of(store.load_annotations("r1", "v130"));
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded[0].rater_id, "r1");
  EXPECT_EQ(loaded[0].video_id, "v130");
  const auto manifest = store.load_manifest();
  const auto cli_view = map_intervals_to_segments(
      loaded, segment_video(*manifest.find("v130"), manifest.segment_rule), "r1");
  EXPECT_EQ(service_->get_projection("r1@v130"), cli_view);
}

TEST_F(ServiceFixture, EmptySubmissionIsAllModerate) {
  service_->submit("r2@v23");
  const auto p = service_->get_projection("r2@v23");
  EXPECT_EQ(p.labels, std::vector<Label>(5, Label::kModerate));
  EXPECT_TRUE(ProjectStore(root_).load_annotations("r2", "v23").empty());
}

TEST_F(ServiceFixture, StateSurvivesRestart) {
  service_->put_intervals("r1@v130", {mark(3, 12, Mark::kStrong)}, 0);
  service_->submit("r3@v23");
  AnnotationService again{ProjectStore(root_)};
  EXPECT_EQ(again.get_session("r1@v130"), service_->get_session("r1@v130"));
  EXPECT_TRUE(again.get_session("r3@v23").sealed);
}

TEST_F(ServiceFixture, ImportedAnnotationsOpenSealed) {
  ProjectStore(root_).save_annotations(
      "r9", "v23", wrap(std::vector<IntervalAnnotation>{
                       {"r9", "v23", 0, 2, Mark::kPoor, ""}}));
  const auto s = service_->get_session("r9@v23");
  EXPECT_TRUE(s.sealed);
  EXPECT_EQ(s.intervals.size(), 1u);
}

TEST_F(ServiceFixture, ProjectionMatchesCoreMappingForRandomStates) {
  std::mt19937_64 rng(2024);
  const auto segments = service_->get_segments("v130");
  std::uint64_t version = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntervalAnnotation> marks;
    double t = std::uniform_real_distribution<double>(0, 6)(rng);
    while (t < 125) {
      const double len = std::uniform_real_distribution<double>(0.2, 9)(rng);
      const Mark m = std::bernoulli_distribution(0.5)(rng) ? Mark::kStrong : Mark::kPoor;
      marks.push_back({"r1", "v130", t, std::min(t + len, 130.0), m, ""});
      t += len + std::uniform_real_distribution<double>(0, 12)(rng);
    }
    version = service_->put_intervals("r1@v130", marks, version);
    EXPECT_EQ(service_->get_projection("r1@v130"),
              map_intervals_to_segments(marks, segments, "r1"));
  }
}

TEST(SessionIds, SplitAndMake) {
  EXPECT_EQ(make_session_id("r1", "v@x"), "r1@v@x");
  EXPECT_EQ(split_session_id("r1@v@x"), std::make_pair(std::string("r1"), std::string("v@x")));
  EXPECT_THROW(make_session_id("a@b", "v"), Error);
  EXPECT_THROW(split_session_id("@v"), Error);
}

}  // namespace
}  // namespace ja
