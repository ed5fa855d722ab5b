#pragma once

#include <string>
#include <vector>

#include "ja/core/types.hpp"

namespace ja {

struct SegmentRule {
  double nominal_len_s = 5.0;
  // A trailing remainder shorter than this is folded into the previous
  // segment instead of becoming its own slice.
  double merge_tail_below_s = 1.0;

  bool operator==(const SegmentRule&) const = default;
};

// Tiles [0, duration_s) with nominal-length segments. The last segment ends
// exactly at duration_s. Throws invalid-input for non-positive or
// non-finite durations, or a malformed rule.
std::vector<SegmentRef> segment_video(double duration_s,
                                      const SegmentRule& rule = {},
                                      const std::string& video_id = {});

inline std::vector<SegmentRef> segment_video(const VideoRecord& video,
                                             const SegmentRule& rule = {}) {
  return segment_video(video.duration_s, rule, video.video_id);
}

}  // namespace ja
