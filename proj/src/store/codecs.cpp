#include "ja/store/codecs.hpp"

#include <cmath>
#include <set>

#include "ja/error.hpp"
#include "ja/store/json_util.hpp"

namespace ja {

using nlohmann::json;

namespace {

template <typename E, typename Parse>
E enum_field(const JsonReader& r, const std::string& key, Parse parse) {
  const auto text = r.string(key);
  const auto value = parse(text);
  if (!value) throw ValidationError(r.path_of(key), "unknown value '" + text + "'");
  return *value;
}

std::size_t index_field(const JsonReader& r, const std::string& key) {
  const auto v = r.integer(key);
  if (v < 0) throw ValidationError(r.path_of(key), "must be non-negative");
  return static_cast<std::size_t>(v);
}

double finite_field(const JsonReader& r, const std::string& key) {
  const double v = r.number(key);
  if (!std::isfinite(v)) throw ValidationError(r.path_of(key), "must be finite");
  return v;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const std::vector<std::string> kVideoKeys = {
    "video_id", "uri", "duration_s", "age_band", "category", "title"};
const std::vector<std::string> kManifestKeys = {"schema_version", "segment_rule",
                                                "videos"};

json unknown_fields(const json& j, const std::vector<std::string>& keys) {
  json out = json::object();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      out[it.key()] = it.value();
    }
  }
  return out;
}

json merge_extra(json j, const json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    if (!j.contains(it.key())) j[it.key()] = it.value();
  }
  return j;
}

json encode_cues(const CueSentences& c) {
  json j = {{"gaze", c.gaze}, {"action", c.action}};
  j["vocalisation"] = c.vocalisation ? json(*c.vocalisation) : json(nullptr);
  if (c.engagement) j["engagement"] = *c.engagement;
  return j;
}

CueSentences decode_cues(const JsonReader& r) {
  CueSentences c;
  c.gaze = r.string("gaze");
  c.action = r.string("action");
  c.vocalisation = r.optional_string("vocalisation");
  c.engagement = r.optional_string("engagement");
  return c;
}

json encode_stats(const FieldStats& f) {
  json per_video = json::array();
  for (const auto& v : f.per_video) {
    per_video.push_back({{"video_id", v.video_id},
                         {"correct", v.correct},
                         {"total", v.total}});
  }
  return {{"per_video", per_video},
          {"mean", f.stats.mean},
          {"median", f.stats.median},
          {"max", f.stats.max},
          {"min", f.stats.min}};
}

FieldStats decode_stats(const JsonReader& r) {
  FieldStats f;
  const auto& rows = r.array("per_video");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    JsonReader row(rows[i], indexed(r.path_of("per_video"), i));
    f.per_video.push_back(
        {row.string("video_id"), row.integer("correct"), row.integer("total")});
  }
  f.stats = {r.number("mean"), r.number("median"), r.number("max"),
             r.number("min")};
  return f;
}

}  // namespace

const VideoRecord* ProjectManifest::find(const std::string& video_id) const {
  for (const auto& v : videos) {
    if (v.video_id == video_id) return &v;
  }
  return nullptr;
}

json encode(const VideoRecord& v) {
  return {{"video_id", v.video_id},
          {"uri", v.uri},
          {"duration_s", v.duration_s},
          {"age_band", std::string(to_string(v.age_band))},
          {"category", std::string(to_string(v.category))},
          {"title", v.title}};
}

VideoRecord decode_video(const json& j, const std::string& path) {
  JsonReader r(j, path);
  VideoRecord v;
  v.video_id = r.string("video_id");
  if (v.video_id.empty()) throw ValidationError(r.path_of("video_id"), "empty id");
  v.uri = r.has("uri") ? r.string("uri") : std::string();
  v.duration_s = finite_field(r, "duration_s");
  if (v.duration_s <= 0.0) {
    throw ValidationError(r.path_of("duration_s"), "must be positive");
  }
  v.age_band = enum_field<AgeBand>(r, "age_band", parse_age_band);
  v.category = enum_field<Category>(r, "category", parse_category);
  v.title = r.has("title") ? r.string("title") : std::string();
  return v;
}

json encode(const SegmentRule& rule) {
  return {{"nominal_len_s", rule.nominal_len_s},
          {"merge_tail_below_s", rule.merge_tail_below_s}};
}

SegmentRule decode_segment_rule(const json& j, const std::string& path) {
  JsonReader r(j, path);
  SegmentRule rule;
  rule.nominal_len_s = finite_field(r, "nominal_len_s");
  rule.merge_tail_below_s = finite_field(r, "merge_tail_below_s");
  if (rule.nominal_len_s <= 0.0) {
    throw ValidationError(r.path_of("nominal_len_s"), "must be positive");
  }
  if (rule.merge_tail_below_s < 0.0 ||
      rule.merge_tail_below_s >= rule.nominal_len_s) {
    throw ValidationError(r.path_of("merge_tail_below_s"),
                          "must lie in [0, nominal_len_s)");
  }
  return rule;
}

json encode(const ProjectManifest& m) {
  json videos = json::array();
  for (std::size_t i = 0; i < m.videos.size(); ++i) {
    json v = encode(m.videos[i]);
    if (i < m.video_extra.size()) v = merge_extra(std::move(v), m.video_extra[i]);
    videos.push_back(std::move(v));
  }
  json j = {{"schema_version", kSchemaVersion},
            {"segment_rule", encode(m.segment_rule)},
            {"videos", videos}};
  return merge_extra(std::move(j), m.extra);
}

ProjectManifest decode_manifest(const json& j, const std::string& path) {
  JsonReader r(j, path);
  const auto version = r.integer("schema_version");
  if (version > kSchemaVersion) {
    throw VersionError(static_cast<int>(version), kSchemaVersion);
  }
  if (version < 1) {
    throw ValidationError(r.path_of("schema_version"), "must be at least 1");
  }
  ProjectManifest m;
  if (r.has("segment_rule")) {
    m.segment_rule = decode_segment_rule(j.at("segment_rule"), r.path_of("segment_rule"));
  }
  const auto& videos = r.array("videos");
  std::set<std::string> seen;
  bool any_extra = false;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    const auto at = indexed(r.path_of("videos"), i);
    m.videos.push_back(decode_video(videos[i], at));
    if (!seen.insert(m.videos.back().video_id).second) {
      throw ValidationError(at + ".video_id",
                            "duplicate id '" + m.videos.back().video_id + "'");
    }
    m.video_extra.push_back(unknown_fields(videos[i], kVideoKeys));
    any_extra = any_extra || !m.video_extra.back().empty();
  }
  if (!any_extra) m.video_extra.clear();
  m.extra = unknown_fields(j, kManifestKeys);
  return m;
}

json encode(const SegmentRef& s) {
  return {{"video_id", s.video_id},
          {"index", s.index},
          {"start_s", s.start_s},
          {"end_s", s.end_s}};
}

SegmentRef decode_segment(const json& j, const std::string& path) {
  JsonReader r(j, path);
  SegmentRef s;
  s.video_id = r.string("video_id");
  s.index = index_field(r, "index");
  s.start_s = finite_field(r, "start_s");
  s.end_s = finite_field(r, "end_s");
  if (s.end_s <= s.start_s) {
    throw ValidationError(r.path_of("end_s"), "must exceed start_s");
  }
  return s;
}

json encode(const IntervalAnnotation& a) {
  return {{"rater_id", a.rater_id},
          {"video_id", a.video_id},
          {"start_s", a.start_s},
          {"end_s", a.end_s},
          {"mark", std::string(to_string(a.mark))},
          {"note", a.note}};
}

IntervalAnnotation decode_interval(const json& j, const std::string& path) {
  JsonReader r(j, path);
  IntervalAnnotation a;
  a.rater_id = r.string("rater_id");
  a.video_id = r.string("video_id");
  a.start_s = finite_field(r, "start_s");
  a.end_s = finite_field(r, "end_s");
  a.mark = enum_field<Mark>(r, "mark", parse_mark);
  a.note = r.has("note") ? r.string("note") : std::string();
  return a;
}

json encode(const SegmentLabelSet& s) {
  json labels = json::array();
  for (Label l : s.labels) labels.push_back(std::string(to_string(l)));
  return {{"rater_id", s.rater_id}, {"video_id", s.video_id}, {"labels", labels}};
}

SegmentLabelSet decode_label_set(const json& j, const std::string& path) {
  JsonReader r(j, path);
  SegmentLabelSet s;
  s.rater_id = r.string("rater_id");
  s.video_id = r.string("video_id");
  const auto& labels = r.array("labels");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto at = indexed(r.path_of("labels"), i);
    if (!labels[i].is_string()) throw ValidationError(at, "expected a string");
    const auto l = parse_label(labels[i].get<std::string>());
    if (!l) throw ValidationError(at, "unknown label");
    s.labels.push_back(*l);
  }
  return s;
}

json encode(const Exemplar& e) {
  json provenance = {{"unanimous", e.unanimous}};
  if (e.source_segment) provenance["source_segment"] = encode(*e.source_segment);
  json metadata = json::object();
  if (e.age_band) metadata["age_band"] = std::string(to_string(*e.age_band));
  if (e.category) metadata["category"] = std::string(to_string(*e.category));
  json j = {{"exemplar_id", e.exemplar_id},
            {"observation", e.observation},
            {"judgement", std::string(to_string(e.judgement))},
            {"provenance", provenance},
            {"metadata", metadata}};
  j["reasoning"] = e.reasoning ? json(*e.reasoning) : json(nullptr);
  return j;
}

Exemplar decode_exemplar(const json& j, const std::string& path) {
  JsonReader r(j, path);
  Exemplar e;
  e.exemplar_id = r.string("exemplar_id");
  e.observation = r.string("observation");
  e.reasoning = r.optional_string("reasoning");
  e.judgement = enum_field<Label>(r, "judgement", parse_label);
  if (r.has("provenance")) {
    const auto p = r.object("provenance");
    e.unanimous = p.has("unanimous") && p.boolean("unanimous");
    if (p.has("source_segment")) {
      e.source_segment = decode_segment(p.json().at("source_segment"),
                                        p.path_of("source_segment"));
    }
  }
  if (r.has("metadata")) {
    const auto m = r.object("metadata");
    if (m.has("age_band")) e.age_band = enum_field<AgeBand>(m, "age_band", parse_age_band);
    if (m.has("category")) e.category = enum_field<Category>(m, "category", parse_category);
  }
  return e;
}

json encode(const BehaviourRecord& rec) {
  return {{"segment", encode(rec.segment)},
          {"parent", encode_cues(rec.parent)},
          {"child", encode_cues(rec.child)}};
}

BehaviourRecord decode_behaviour(const json& j, const std::string& path) {
  JsonReader r(j, path);
  BehaviourRecord rec;
  rec.segment = decode_segment(j.at("segment"), r.path_of("segment"));
  rec.parent = decode_cues(r.object("parent"));
  rec.child = decode_cues(r.object("child"));
  return rec;
}

json encode(const VideoJudgement& v) {
  json j = {{"video_id", v.video_id},
            {"segment_index", v.output.segment_index},
            {"label", std::string(to_string(v.output.label))}};
  if (v.output.observation_text) j["observation_text"] = *v.output.observation_text;
  if (v.output.reasoning_text) j["reasoning_text"] = *v.output.reasoning_text;
  return j;
}

VideoJudgement decode_judgement(const json& j, const std::string& path) {
  JsonReader r(j, path);
  VideoJudgement v;
  v.video_id = r.string("video_id");
  v.output.segment_index = index_field(r, "segment_index");
  v.output.label = enum_field<Label>(r, "label", parse_label);
  v.output.observation_text = r.optional_string("observation_text");
  v.output.reasoning_text = r.optional_string("reasoning_text");
  return v;
}

json encode(const AdjudicatedReference& a) {
  return {{"video_id", a.video_id},
          {"segment_index", a.segment_index},
          {"role", std::string(to_string(a.role))},
          {"field", std::string(to_string(a.field))},
          {"reference_text", a.reference_text},
          {"correction_kind", std::string(to_string(a.correction_kind))}};
}

AdjudicatedReference decode_reference(const json& j, const std::string& path) {
  JsonReader r(j, path);
  AdjudicatedReference a;
  a.video_id = r.string("video_id");
  a.segment_index = index_field(r, "segment_index");
  a.role = enum_field<Role>(r, "role", parse_role);
  a.field = enum_field<CueField>(r, "field", parse_cue_field);
  a.reference_text = r.string("reference_text");
  a.correction_kind = r.has("correction_kind")
                          ? enum_field<CorrectionKind>(r, "correction_kind",
                                                       parse_correction_kind)
                          : CorrectionKind::kAccepted;
  return a;
}

json encode(const RunError& e) {
  return {{"video_id", e.video_id},
          {"stage", e.stage},
          {"kind", e.kind},
          {"message", e.message}};
}

RunError decode_run_error(const json& j, const std::string& path) {
  JsonReader r(j, path);
  return {r.string("video_id"), r.string("stage"), r.string("kind"),
          r.string("message")};
}

json encode(const DistributionReport& d) {
  json j = {{"total", d.total()}};
  for (Label l : kAllLabels) {
    j[std::string(to_string(l))] = {{"count", d.count(l)},
                                    {"percentage", d.percentage(l)}};
  }
  return j;
}

json encode(const FieldAccuracyReport& rep) {
  return {{"gaze", encode_stats(rep.gaze)},
          {"action", encode_stats(rep.action)},
          {"vocalisation", encode_stats(rep.vocalisation)}};
}

FieldAccuracyReport decode_field_accuracy(const json& j, const std::string& path) {
  JsonReader r(j, path);
  return {decode_stats(r.object("gaze")), decode_stats(r.object("action")),
          decode_stats(r.object("vocalisation"))};
}

}  // namespace ja
