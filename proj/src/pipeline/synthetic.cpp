#include "ja/pipeline/synthetic.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "ja/core/segmentation.hpp"
#include "ja/gateway/mock.hpp"
#include "ja/prompt/stage2.hpp"
#include "ja/store/project_store.hpp"

namespace ja {

namespace {

constexpr Label S = Label::kStrong;
constexpr Label M = Label::kModerate;
constexpr Label P = Label::kPoor;

}  // namespace

const std::vector<int>& synthetic_segment_counts() {
  // 13 clips under a minute, 11 between one and five minutes, one of
  // 5-10 minutes and one over ten minutes.
  static const std::vector<int> counts = {
      10, 11, 12, 12, 12, 12, 11, 10, 12, 12, 12, 11, 12,  // < 1 min
      14, 18, 20, 22, 24, 26, 28, 30, 16, 19, 22,          // 1-5 min
      110,                                                 // 5-10 min
      140,                                                 // > 10 min
  };
  return counts;
}

std::vector<std::array<Label, 3>> synthetic_label_matrix() {
  // Multiplicities solved offline as a small integer program over the 27
  // possible label triples.
  const std::vector<std::pair<std::array<Label, 3>, int>> recipe = {
      {{S, S, S}, 136}, {{S, M, M}, 19}, {{M, S, M}, 36}, {{M, S, P}, 23},
      {{M, M, S}, 14},  {{M, M, M}, 340}, {{M, M, P}, 18}, {{M, P, M}, 41},
      {{P, M, M}, 1},   {{P, P, P}, 10},
  };
  std::vector<std::array<Label, 3>> rows;
  for (const auto& [triple, count] : recipe) {
    rows.insert(rows.end(), static_cast<std::size_t>(count), triple);
  }
  std::mt19937_64 rng(638);
  std::shuffle(rows.begin(), rows.end(), rng);
  return rows;
}

std::vector<IntervalAnnotation> marks_from_labels(
    const SegmentLabelSet& labels, const std::vector<SegmentRef>& segments) {
  std::vector<IntervalAnnotation> out;
  for (std::size_t i = 0; i < labels.labels.size();) {
    const Label l = labels.labels[i];
    std::size_t j = i + 1;
    while (j < labels.labels.size() && labels.labels[j] == l) ++j;
    if (l != Label::kModerate) {
      out.push_back({labels.rater_id, labels.video_id, segments[i].start_s,
                     segments[j - 1].end_s,
                     l == Label::kStrong ? Mark::kStrong : Mark::kPoor, ""});
    }
    i = j;
  }
  return out;
}

SyntheticStudy make_synthetic_study() {
  SyntheticStudy study;
  study.rater_ids = {"slp1", "slp2", "slp3"};
  const auto& counts = synthetic_segment_counts();
  std::vector<AgeBand> bands;
  bands.insert(bands.end(), 4, AgeBand::k0to2);
  bands.insert(bands.end(), 5, AgeBand::k2to4);
  bands.insert(bands.end(), 16, AgeBand::k4to6);
  bands.insert(bands.end(), 1, AgeBand::k6to8);

  const auto matrix = synthetic_label_matrix();
  std::size_t row = 0;
  // Unanimous segments seen so far per (band, label).
  std::map<std::pair<AgeBand, Label>, bool> covered;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    VideoRecord video;
    video.video_id = (v + 1 < 10 ? "v0" : "v") + std::to_string(v + 1);
    video.uri = "media/" + video.video_id + ".mp4";
    video.duration_s = 5.0 * counts[v] - 2.0;
    video.age_band = bands[v];
    const auto slot = v % 13;
    video.category = slot < 5    ? Category::kBehaviourGuidance
                     : slot < 10 ? Category::kLanguageCognitive
                                 : Category::kDailyLife;
    video.title = "Synthetic session " + std::to_string(v + 1);
    study.manifest.videos.push_back(video);

    const auto segments = segment_video(video, study.manifest.segment_rule);
    for (std::size_t r = 0; r < study.rater_ids.size(); ++r) {
      SegmentLabelSet set{study.rater_ids[r], video.video_id, {}};
      for (std::size_t s = 0; s < segments.size(); ++s) {
        set.labels.push_back(matrix[row + s][r]);
      }
      study.labels[study.rater_ids[r]].push_back(std::move(set));
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
      const auto& triple = matrix[row + s];
      if (triple[0] != triple[1] || triple[1] != triple[2]) continue;
      auto& seen = covered[{video.age_band, triple[0]}];
      if (seen) continue;
      seen = true;
      const auto record = mock_describe(segments[s]);
      Exemplar e;
      e.exemplar_id = "syn-" + video.video_id + "-" + std::to_string(s);
      e.observation = observation_block(record);
      e.reasoning = "All three raters judged this segment " +
                    std::string(to_string(triple[0])) +
                    " from the gaze, action and vocalisation cues above.";
      e.judgement = triple[0];
      e.unanimous = true;
      e.source_segment = segments[s];
      e.age_band = video.age_band;
      e.category = video.category;
      study.library.push_back(std::move(e));
    }
    row += segments.size();
  }
  return study;
}

std::filesystem::path write_synthetic_study(const SyntheticStudy& study,
                                            const std::filesystem::path& root) {
  ProjectStore store(root);
  for (const auto& [rater, sets] : study.labels) {
    for (std::size_t v = 0; v < sets.size(); ++v) {
      const auto& video = study.manifest.videos[v];
      const auto marks = marks_from_labels(
          sets[v], segment_video(video, study.manifest.segment_rule));
      store.save_annotations(rater, video.video_id, wrap(marks));
    }
  }
  store.save_library(wrap(study.library));
  const auto path = root / "synthetic_manifest.json";
  write_file_atomic(path, canonical_json(encode(study.manifest)) + "\n");
  return path;
}

}  // namespace ja
