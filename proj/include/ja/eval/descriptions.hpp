#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ja/error.hpp"
#include "ja/prompt/behaviour.hpp"

namespace ja {

// Lowercase, trim, strip terminal punctuation and collapse internal
// whitespace. Idempotent.
std::string normalise_text(std::string_view text);

enum class CorrectionKind { kAccepted, kContradictionFixed, kGranularityRefined };

std::string_view to_string(CorrectionKind kind);
std::optional<CorrectionKind> parse_correction_kind(std::string_view text);

// Expert-corrected text for one cue of one role in one segment.
struct AdjudicatedReference {
  std::string video_id;
  std::size_t segment_index = 0;
  Role role = Role::kChild;
  CueField field = CueField::kGaze;
  // The None token for an absent vocalisation.
  std::string reference_text;
  CorrectionKind correction_kind = CorrectionKind::kAccepted;

  bool operator==(const AdjudicatedReference&) const = default;
};

class CoverageError : public Error {
 public:
  CoverageError(std::string video_id, std::size_t segment_index, Role role,
                CueField field);
  const std::string& video_id() const noexcept { return video_id_; }
  std::size_t segment_index() const noexcept { return segment_index_; }
  Role role() const noexcept { return role_; }
  CueField field() const noexcept { return field_; }

 private:
  std::string video_id_;
  std::size_t segment_index_;
  Role role_;
  CueField field_;
};

struct VideoAccuracy {
  std::string video_id;
  long long correct = 0;
  long long total = 0;
  // correct / total, unrounded.
  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / total;
  }
  bool operator==(const VideoAccuracy&) const = default;
};

// Order statistics over per-video accuracies, rounded half-up to 4 places.
struct AccuracyStats {
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double min = 0.0;
  bool operator==(const AccuracyStats&) const = default;
};

// Throws invalid-input for an empty list or values outside [0, 1].
AccuracyStats summarise_accuracies(std::span<const double> accuracies);

struct FieldStats {
  std::vector<VideoAccuracy> per_video;
  AccuracyStats stats;
  bool operator==(const FieldStats&) const = default;
};

struct FieldAccuracyReport {
  FieldStats gaze;
  FieldStats action;
  FieldStats vocalisation;

  const FieldStats& of(CueField field) const;
  bool operator==(const FieldAccuracyReport&) const = default;
};

// Per-video, per-field accuracy of generated descriptions against the
// adjudicated overlay. Both roles are pooled: a video with n segments has 2n
// instances per field. Videos appear in order of first appearance.
//
// Throws CoverageError for the first generated field without a reference,
// and invalid-input when `generated` is empty or repeats a segment.
FieldAccuracyReport score_descriptions(
    std::span<const BehaviourRecord> generated,
    std::span<const AdjudicatedReference> references);

// Accepts every generated sentence as its own reference. Useful as a
// starting overlay for adjudication.
std::vector<AdjudicatedReference> references_from_records(
    std::span<const BehaviourRecord> records);

}  // namespace ja
