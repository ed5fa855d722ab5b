#include "ja/core/segmentation.hpp"

#include <cmath>

#include "ja/error.hpp"

namespace ja {
namespace {

// Remainders below this are float noise from durations that are whole
// multiples of the nominal length.
constexpr double kTailEpsilon = 1e-9;

}  // namespace

std::vector<SegmentRef> segment_video(double duration_s,
                                      const SegmentRule& rule,
                                      const std::string& video_id) {
  if (!std::isfinite(duration_s) || duration_s <= 0.0) {
    throw invalid_input("duration must be positive, got " +
                        std::to_string(duration_s));
  }
  if (!(rule.nominal_len_s > 0.0) || rule.merge_tail_below_s < 0.0 ||
      rule.merge_tail_below_s >= rule.nominal_len_s) {
    throw invalid_input("segment rule requires 0 <= merge_tail_below_s < "
                        "nominal_len_s");
  }

  const auto full =
      static_cast<std::size_t>(std::floor(duration_s / rule.nominal_len_s));
  const double tail =
      duration_s - static_cast<double>(full) * rule.nominal_len_s;

  std::size_t count = full;
  if (tail > kTailEpsilon * rule.nominal_len_s &&
      (tail >= rule.merge_tail_below_s || full == 0)) {
    ++count;
  }
  if (count == 0) count = 1;

  std::vector<SegmentRef> segments;
  segments.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SegmentRef seg;
    seg.video_id = video_id;
    seg.index = i;
    seg.start_s = static_cast<double>(i) * rule.nominal_len_s;
    seg.end_s = i + 1 == count
                    ? duration_s
                    : static_cast<double>(i + 1) * rule.nominal_len_s;
    segments.push_back(std::move(seg));
  }
  return segments;
}

}  // namespace ja
