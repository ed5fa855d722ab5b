#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ja/store/project_store.hpp"

namespace ja {

// One rater's work on one video. The id is "<rater_id>@<video_id>".
struct AnnotationSession {
  std::string session_id;
  std::string rater_id;
  std::string video_id;
  std::uint64_t version = 0;
  std::vector<IntervalAnnotation> intervals;
  std::string notes;
  bool sealed = false;

  bool operator==(const AnnotationSession&) const = default;
};

nlohmann::json encode(const AnnotationSession& s);
AnnotationSession decode_session(const nlohmann::json& j,
                                 const std::string& path = "session");

// Splits "<rater_id>@<video_id>" at the first '@'. Throws not-found for a
// malformed id.
std::pair<std::string, std::string> split_session_id(const std::string& id);
std::string make_session_id(const std::string& rater_id,
                            const std::string& video_id);

// Annotation workflow over a project store. Drafts persist under
// sessions/<session_id>.json before a write is acknowledged; submitting
// writes annotations/<rater>/<video>.jsonl and seals the session. A session
// whose annotations file already exists without a draft opens sealed.
//
// Writes to one session are serialised; different sessions proceed
// concurrently.
class AnnotationService {
 public:
  explicit AnnotationService(ProjectStore store);

  const ProjectStore& store() const { return store_; }

  // Manifest view; an absent manifest reads as an empty list.
  std::vector<VideoRecord> list_videos() const;
  // Throws not-found for an unknown video.
  VideoRecord video(const std::string& video_id) const;
  std::vector<SegmentRef> get_segments(const std::string& video_id) const;

  // Opens the session on first access (version 0, no intervals). Throws
  // not-found for an unknown video or malformed id.
  AnnotationSession get_session(const std::string& session_id);

  // Replaces the intervals. Empty rater/video ids in `intervals` are filled
  // from the session. Throws ValidationError for malformed or overlapping
  // intervals and conflict for a stale version or a sealed session.
  std::uint64_t put_intervals(const std::string& session_id,
                              std::vector<IntervalAnnotation> intervals,
                              std::uint64_t expected_version,
                              std::optional<std::string> notes = std::nullopt);

  // Seals the session and lands its annotations document. Conflict when
  // already sealed.
  AnnotationSession submit(const std::string& session_id);

  // map_intervals_to_segments of the stored intervals.
  SegmentLabelSet get_projection(const std::string& session_id);

 private:
  struct Slot {
    std::mutex mutex;
    std::optional<AnnotationSession> session;
  };

  Slot& slot(const std::string& session_id);
  AnnotationSession& load_locked(Slot& slot, const std::string& session_id);
  void persist(const AnnotationSession& session) const;

  ProjectStore store_;
  std::mutex slots_mutex_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
};

}  // namespace ja
