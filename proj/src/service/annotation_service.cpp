#include "ja/service/annotation_service.hpp"

#include "ja/core/labelling.hpp"
#include "ja/core/segmentation.hpp"
#include "ja/error.hpp"

namespace ja {

namespace fs = std::filesystem;
using nlohmann::json;

json encode(const AnnotationSession& s) {
  json intervals = json::array();
  for (const auto& a : s.intervals) intervals.push_back(encode(a));
  return {{"schema_version", kSchemaVersion},
          {"session_id", s.session_id},
          {"rater_id", s.rater_id},
          {"video_id", s.video_id},
          {"version", s.version},
          {"intervals", intervals},
          {"notes", s.notes},
          {"sealed", s.sealed}};
}

AnnotationSession decode_session(const json& j, const std::string& path) {
  JsonReader r(j, path);
  AnnotationSession s;
  s.session_id = r.string("session_id");
  s.rater_id = r.string("rater_id");
  s.video_id = r.string("video_id");
  const auto version = r.integer("version");
  if (version < 0) throw ValidationError(r.path_of("version"), "must be non-negative");
  s.version = static_cast<std::uint64_t>(version);
  const auto& intervals = r.array("intervals");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    s.intervals.push_back(decode_interval(
        intervals[i], r.path_of("intervals") + "[" + std::to_string(i) + "]"));
  }
  s.notes = r.has("notes") ? r.string("notes") : std::string();
  s.sealed = r.has("sealed") && r.boolean("sealed");
  return s;
}

std::pair<std::string, std::string> split_session_id(const std::string& id) {
  const auto at = id.find('@');
  if (at == std::string::npos || at == 0 || at + 1 == id.size()) {
    throw not_found("no session '" + id + "'");
  }
  return {id.substr(0, at), id.substr(at + 1)};
}

std::string make_session_id(const std::string& rater_id,
                            const std::string& video_id) {
  if (rater_id.find('@') != std::string::npos) {
    throw invalid_input("rater id may not contain '@'");
  }
  return rater_id + "@" + video_id;
}

AnnotationService::AnnotationService(ProjectStore store) : store_(std::move(store)) {}

std::vector<VideoRecord> AnnotationService::list_videos() const {
  std::error_code ec;
  if (!fs::exists(store_.manifest_path(), ec)) return {};
  return store_.load_manifest().videos;
}

VideoRecord AnnotationService::video(const std::string& video_id) const {
  for (const auto& v : list_videos()) {
    if (v.video_id == video_id) return v;
  }
  throw not_found("no video '" + video_id + "'");
}

std::vector<SegmentRef> AnnotationService::get_segments(
    const std::string& video_id) const {
  std::error_code ec;
  if (!fs::exists(store_.manifest_path(), ec)) {
    throw not_found("no video '" + video_id + "'");
  }
  const auto manifest = store_.load_manifest();
  const auto* v = manifest.find(video_id);
  if (v == nullptr) throw not_found("no video '" + video_id + "'");
  return segment_video(*v, manifest.segment_rule);
}

AnnotationService::Slot& AnnotationService::slot(const std::string& session_id) {
  std::lock_guard lock(slots_mutex_);
  auto& s = slots_[session_id];
  if (!s) s = std::make_unique<Slot>();
  return *s;
}

AnnotationSession& AnnotationService::load_locked(Slot& slot,
                                                  const std::string& session_id) {
  if (slot.session) return *slot.session;
  const auto [rater_id, video_id] = split_session_id(session_id);
  video(video_id);
  std::error_code ec;
  const auto draft = store_.session_path(session_id);
  if (fs::exists(draft, ec)) {
    slot.session = decode_session(parse_json(read_text_file(draft), draft.string()));
    return *slot.session;
  }
  AnnotationSession s{session_id, rater_id, video_id, 0, {}, {}, false};
  if (fs::exists(store_.annotations_path(rater_id, video_id), ec)) {
    s.intervals = values_of(store_.load_annotations(rater_id, video_id));
    s.sealed = true;
  }
  slot.session = std::move(s);
  return *slot.session;
}

void AnnotationService::persist(const AnnotationSession& session) const {
  write_file_atomic(store_.session_path(session.session_id),
                    canonical_json(encode(session)) + "\n");
}

AnnotationSession AnnotationService::get_session(const std::string& session_id) {
  auto& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  return load_locked(s, session_id);
}

std::uint64_t AnnotationService::put_intervals(
    const std::string& session_id, std::vector<IntervalAnnotation> intervals,
    std::uint64_t expected_version, std::optional<std::string> notes) {
  auto& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  auto& session = load_locked(s, session_id);
  if (session.sealed) throw conflict("session " + session_id + " is submitted");
  if (expected_version != session.version) {
    throw conflict("stale version " + std::to_string(expected_version) +
                   "; current version is " + std::to_string(session.version));
  }
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    auto& a = intervals[i];
    const auto at = "intervals[" + std::to_string(i) + "]";
    if (a.rater_id.empty()) a.rater_id = session.rater_id;
    if (a.video_id.empty()) a.video_id = session.video_id;
    if (a.rater_id != session.rater_id) {
      throw ValidationError(at + ".rater_id", "does not match the session");
    }
    if (a.video_id != session.video_id) {
      throw ValidationError(at + ".video_id", "does not match the session");
    }
  }
  try {
    validate_intervals(intervals, video(session.video_id).duration_s);
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError("intervals", e.what());
  }
  AnnotationSession next = session;
  next.intervals = std::move(intervals);
  if (notes) next.notes = *notes;
  ++next.version;
  persist(next);
  session = std::move(next);
  return session.version;
}

AnnotationSession AnnotationService::submit(const std::string& session_id) {
  auto& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  auto& session = load_locked(s, session_id);
  if (session.sealed) throw conflict("session " + session_id + " is already submitted");
  AnnotationSession next = session;
  next.sealed = true;
  ++next.version;
  store_.save_annotations(next.rater_id, next.video_id, wrap(next.intervals));
  persist(next);
  session = std::move(next);
  return session;
}

SegmentLabelSet AnnotationService::get_projection(const std::string& session_id) {
  const auto session = get_session(session_id);
  return map_intervals_to_segments(session.intervals,
                                   get_segments(session.video_id),
                                   session.rater_id);
}

}  // namespace ja
