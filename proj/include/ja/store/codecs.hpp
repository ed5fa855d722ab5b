#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "json.hpp"
#include "ja/core/segmentation.hpp"
#include "ja/core/types.hpp"
#include "ja/eval/alignment.hpp"
#include "ja/eval/descriptions.hpp"
#include "ja/prompt/behaviour.hpp"
#include "ja/prompt/exemplars.hpp"

namespace ja {

inline constexpr int kSchemaVersion = 1;

// A decoded value plus the fields the codec did not recognise, which are
// written back unchanged on save.
template <typename T>
struct Stored {
  T value;
  nlohmann::json extra = nlohmann::json::object();

  bool operator==(const Stored&) const = default;
};

struct ProjectManifest {
  std::vector<VideoRecord> videos;
  SegmentRule segment_rule;
  // Unknown fields of the document and of each video entry (parallel to
  // `videos`; may be empty).
  nlohmann::json extra = nlohmann::json::object();
  std::vector<nlohmann::json> video_extra;

  const VideoRecord* find(const std::string& video_id) const;
  bool operator==(const ProjectManifest&) const = default;
};

// A judgement with the video it belongs to; segment_index is the segment's
// index within that video.
struct VideoJudgement {
  std::string video_id;
  JudgementOutput output;
  bool operator==(const VideoJudgement&) const = default;
};

// One per-video failure recorded during a run.
struct RunError {
  std::string video_id;
  std::string stage;
  std::string kind;
  std::string message;
  bool operator==(const RunError&) const = default;
};

// Every codec pair below satisfies decode(encode(x)) == x. Decoders throw
// ValidationError naming the offending field under `path`.

nlohmann::json encode(const ProjectManifest& m);
// Also checks schema_version (VersionError when newer than supported),
// unique video ids and positive durations.
ProjectManifest decode_manifest(const nlohmann::json& j,
                                const std::string& path = "manifest");

nlohmann::json encode(const VideoRecord& v);
VideoRecord decode_video(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const SegmentRule& r);
SegmentRule decode_segment_rule(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const SegmentRef& s);
SegmentRef decode_segment(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const IntervalAnnotation& a);
IntervalAnnotation decode_interval(const nlohmann::json& j,
                                   const std::string& path);

nlohmann::json encode(const SegmentLabelSet& s);
SegmentLabelSet decode_label_set(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const Exemplar& e);
Exemplar decode_exemplar(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const BehaviourRecord& r);
BehaviourRecord decode_behaviour(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const VideoJudgement& j);
VideoJudgement decode_judgement(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const AdjudicatedReference& r);
AdjudicatedReference decode_reference(const nlohmann::json& j,
                                      const std::string& path);

nlohmann::json encode(const RunError& e);
RunError decode_run_error(const nlohmann::json& j, const std::string& path);

nlohmann::json encode(const DistributionReport& d);
nlohmann::json encode(const FieldAccuracyReport& r);
FieldAccuracyReport decode_field_accuracy(const nlohmann::json& j,
                                          const std::string& path);

// Field names each codec understands; everything else goes to `extra`.
template <typename T>
struct CodecTraits;

#define JA_CODEC_TRAITS(Type, decoder, ...)                                  \
  template <>                                                                \
  struct CodecTraits<Type> {                                                 \
    static Type decode(const nlohmann::json& j, const std::string& path) {   \
      return decoder(j, path);                                               \
    }                                                                        \
    static const std::vector<std::string>& keys() {                          \
      static const std::vector<std::string> k = {__VA_ARGS__};               \
      return k;                                                              \
    }                                                                        \
  };

JA_CODEC_TRAITS(IntervalAnnotation, decode_interval, "rater_id", "video_id",
                "start_s", "end_s", "mark", "note")
JA_CODEC_TRAITS(SegmentLabelSet, decode_label_set, "rater_id", "video_id",
                "labels")
JA_CODEC_TRAITS(Exemplar, decode_exemplar, "exemplar_id", "observation",
                "reasoning", "judgement", "provenance", "metadata")
JA_CODEC_TRAITS(BehaviourRecord, decode_behaviour, "segment", "parent", "child")
JA_CODEC_TRAITS(VideoJudgement, decode_judgement, "video_id", "segment_index",
                "label", "observation_text", "reasoning_text")
JA_CODEC_TRAITS(AdjudicatedReference, decode_reference, "video_id",
                "segment_index", "role", "field", "reference_text",
                "correction_kind")
JA_CODEC_TRAITS(RunError, decode_run_error, "video_id", "stage", "kind",
                "message")

#undef JA_CODEC_TRAITS

template <typename T>
Stored<T> decode_stored(const nlohmann::json& j, const std::string& path) {
  Stored<T> out{CodecTraits<T>::decode(j, path), nlohmann::json::object()};
  const auto& keys = CodecTraits<T>::keys();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      out.extra[it.key()] = it.value();
    }
  }
  return out;
}

template <typename T>
nlohmann::json encode(const Stored<T>& s) {
  nlohmann::json j = encode(s.value);
  for (auto it = s.extra.begin(); it != s.extra.end(); ++it) {
    if (!j.contains(it.key())) j[it.key()] = it.value();
  }
  return j;
}

// JSONL stream of one record family. `name` prefixes error paths.
template <typename T>
std::vector<Stored<T>> decode_stream(const std::vector<nlohmann::json>& docs,
                                     const std::string& name) {
  std::vector<Stored<T>> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out.push_back(decode_stored<T>(docs[i], name + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <typename T>
std::vector<T> values_of(const std::vector<Stored<T>>& stored) {
  std::vector<T> out;
  out.reserve(stored.size());
  for (const auto& s : stored) out.push_back(s.value);
  return out;
}

template <typename T>
std::vector<Stored<T>> wrap(const std::vector<T>& values) {
  std::vector<Stored<T>> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back({v, nlohmann::json::object()});
  return out;
}

}  // namespace ja
