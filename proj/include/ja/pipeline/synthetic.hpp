#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ja/store/codecs.hpp"

namespace ja {

// Segments per video of the synthetic 26-video study; sums to 638. Video i
// lasts 5n - 2 seconds so its last segment is a 3-second tail.
const std::vector<int>& synthetic_segment_counts();

// 638 x 3 rater label matrix: column r holds rater r's labels. Per-rater
// marginals are 155/472/11, 195/392/51 and 150/437/51 (Strong/Moderate/
// Poor); 23 rows are three-way disagreements and the other 615 carry the
// consensus counts 136/469/10. Rows are shuffled with a fixed seed.
std::vector<std::array<Label, 3>> synthetic_label_matrix();

// Interval marks reproducing `labels` under map_intervals_to_segments:
// each run of consecutive Strong or Poor segments becomes one mark spanning
// the run; Moderate segments stay unmarked.
std::vector<IntervalAnnotation> marks_from_labels(
    const SegmentLabelSet& labels, const std::vector<SegmentRef>& segments);

struct SyntheticStudy {
  ProjectManifest manifest;
  std::vector<std::string> rater_ids;
  // rater id -> one label set per video, manifest order.
  std::map<std::string, std::vector<SegmentLabelSet>> labels;
  // Per age band, one exemplar per label drawn from unanimous segments and
  // described by the mock backend.
  std::vector<Exemplar> library;
};

// 26 videos ("v01".."v26") with age bands 4/5/16/1 over 0-2/2-4/4-6/6-8
// and categories 10/10/6, three raters following synthetic_label_matrix().
SyntheticStudy make_synthetic_study();

// A manifest file ready for ingest plus, under `root`, every rater's
// annotations and the exemplar library. Returns the manifest path.
std::filesystem::path write_synthetic_study(const SyntheticStudy& study,
                                            const std::filesystem::path& root);

}  // namespace ja
