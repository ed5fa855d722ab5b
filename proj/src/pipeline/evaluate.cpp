#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "ja/core/hash.hpp"
#include "ja/core/labelling.hpp"
#include "ja/core/segmentation.hpp"
#include "ja/eval/alignment.hpp"
#include "ja/eval/descriptions.hpp"
#include "ja/eval/radar.hpp"
#include "ja/eval/ranking.hpp"
#include "ja/pipeline/commands.hpp"
#include "run_support.hpp"

namespace ja {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Error coverage(const std::string& message) { return Error(ErrorKind::kCoverage, message); }

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

std::vector<RunRecord> pick_judge_runs(const ProjectStore& store,
                                       const EvaluateOptions& options,
                                       const std::string& manifest_hash) {
  std::vector<RunRecord> runs;
  if (!options.runs.empty()) {
    for (const auto& id : options.runs) {
      auto run = store.load_run(id);
      if (run.stage != "judge" || !run.sealed || !run.condition) {
        throw invalid_input("run " + id + " is not a completed judge run");
      }
      runs.push_back(std::move(run));
    }
  } else {
    for (const auto& id : store.list_runs()) {
      auto run = store.load_run(id);
      if (run.stage == "judge" && run.sealed && run.condition &&
          run.input_hashes.count("manifest") &&
          run.input_hashes.at("manifest") == manifest_hash) {
        runs.push_back(std::move(run));
      }
    }
    if (runs.empty()) throw not_found("no completed judge runs for the current manifest");
  }
  std::set<std::string> conditions;
  for (const auto& r : runs) {
    if (!parse_condition(*r.condition)) {
      throw ValidationError("run.condition", "unknown condition '" + *r.condition + "'");
    }
    if (!conditions.insert(*r.condition).second) {
      throw invalid_input("several judge runs for condition " + *r.condition +
                          "; choose with --runs");
    }
  }
  auto order = [](const RunRecord& r) {
    const auto c = *parse_condition(*r.condition);
    return std::find(kConditionGrid.begin(), kConditionGrid.end(), c) - kConditionGrid.begin();
  };
  std::sort(runs.begin(), runs.end(),
            [&](const auto& a, const auto& b) { return order(a) < order(b); });
  return runs;
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", v);
  return buf;
}

std::string distribution_row(const std::string& name, const DistributionReport& d) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %5lld (%7s) %5lld (%7s) %5lld (%7s) %6lld\n",
                name.c_str(), d.count(Label::kStrong),
                percent(d.percentage(Label::kStrong)).c_str(), d.count(Label::kModerate),
                percent(d.percentage(Label::kModerate)).c_str(), d.count(Label::kPoor),
                percent(d.percentage(Label::kPoor)).c_str(), d.total());
  return buf;
}

}  // namespace

EvaluateSummary evaluate(const ProjectStore& store, const EvaluateOptions& options) {
  const auto ctx = detail::load_context(store);
  const auto runs = pick_judge_runs(store, options, ctx.manifest_hash);

  const auto raters = store.list_raters();
  if (raters.empty()) throw coverage("no rater annotations in the project");
  std::map<std::string, std::vector<SegmentLabelSet>> labels;
  std::vector<std::string> annotation_bytes;
  std::map<std::string, std::vector<SegmentRef>> segments;
  for (const auto& v : ctx.manifest.videos) {
    segments[v.video_id] = segment_video(v, ctx.manifest.segment_rule);
  }
  for (const auto& rater : raters) {
    for (const auto& v : ctx.manifest.videos) {
      std::vector<Stored<IntervalAnnotation>> marks;
      try {
        marks = store.load_annotations(rater, v.video_id);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNotFound) throw;
        throw coverage("rater " + rater + " has no annotations for video " + v.video_id);
      }
      annotation_bytes.push_back(rater + "/" + v.video_id + "\n" + records_to_jsonl(marks));
      const auto values = values_of(marks);
      labels[rater].push_back(
          map_intervals_to_segments(values, segments.at(v.video_id), rater));
    }
  }
  const auto references = store.load_references();

  RunRecord run;
  run.stage = "evaluate";
  run.input_hashes = {{"manifest", ctx.manifest_hash}};
  std::string joined;
  for (const auto& b : annotation_bytes) joined += b;
  run.input_hashes["annotations"] = sha256_hex(joined);
  for (const auto& r : runs) run.input_hashes["judge:" + *r.condition] = r.run_id;
  if (!references.empty()) {
    run.input_hashes["references"] = sha256_hex(records_to_jsonl(references));
  }
  run.config_hash = detail::hash_json({{"evaluate", kSchemaVersion}});
  run.run_id = derive_run_id(run.stage, run.input_hashes, run.config_hash);
  run.created_at = timestamp_now();
  run.model_name = runs.front().model_name;
  run.backend_id = runs.front().backend_id;

  EvaluateSummary summary;
  summary.run_id = run.run_id;
  const auto opened = detail::open_run(store, run);
  std::map<std::string, std::string> artifacts;

  if (!opened) {
    summary.reused = true;
    for (const auto& a : store.load_run(run.run_id).artifacts) {
      if (a.rfind("reports/", 0) == 0) summary.reports.push_back(a);
    }
    summary.summary_text = store.read_artifact(run.run_id, "reports/summary.txt");
  } else {
    // Label distribution per rater and over the strict-majority consensus.
    json distribution = {{"raters", json::object()}};
    std::string text = "Label distribution\n";
    text += "rater        Strong            Moderate          Poor              total\n";
    for (const auto& rater : raters) {
      const auto flat = flatten(labels.at(rater));
      const auto d = label_distribution(flat);
      distribution["raters"][rater] = encode(d);
      text += distribution_row(rater, d);
    }
    if (raters.size() >= 2) {
      std::vector<ConsensusLabel> consensus;
      for (std::size_t v = 0; v < ctx.manifest.videos.size(); ++v) {
        std::vector<SegmentLabelSet> sets;
        for (const auto& rater : raters) sets.push_back(labels.at(rater)[v]);
        const auto c = aggregate_consensus(sets);
        consensus.insert(consensus.end(), c.begin(), c.end());
      }
      const auto d = consensus_distribution(consensus);
      const auto excluded = static_cast<long long>(consensus.size()) - d.total();
      distribution["consensus"] = encode(d);
      distribution["segments"] = consensus.size();
      distribution["excluded"] = excluded;
      text += distribution_row("consensus", d);
      text += "segments " + std::to_string(consensus.size()) + ", excluded without majority " +
              std::to_string(excluded) + "\n";
    }
    artifacts["reports/distribution.json"] = pretty(distribution);

    // Alignment of each condition's judgements with each rater.
    std::vector<AlignmentReport> reports;
    std::optional<std::string> describe_run;
    for (const auto& r : runs) {
      const auto condition = *parse_condition(*r.condition);
      std::map<std::string, std::vector<JudgementOutput>> by_video;
      for (const auto& j : values_of(read_records<VideoJudgement>(
               store.run_dir(r.run_id) / "judgements.jsonl", r.run_id + "/judgements.jsonl"))) {
        by_video[j.video_id].push_back(j.output);
      }
      for (const auto& v : ctx.manifest.videos) {
        auto& preds = by_video[v.video_id];
        std::vector<std::size_t> indices;
        for (const auto& p : preds) indices.push_back(p.segment_index);
        std::sort(indices.begin(), indices.end());
        bool complete = indices.size() == segments.at(v.video_id).size();
        for (std::size_t i = 0; complete && i < indices.size(); ++i) {
          complete = indices[i] == i;
        }
        if (!complete) {
          throw coverage("judge run " + r.run_id + " covers " + std::to_string(indices.size()) +
                         " of " + std::to_string(segments.at(v.video_id).size()) +
                         " segments of video " + v.video_id);
        }
      }
      for (std::size_t k = 0; k < raters.size(); ++k) {
        ConfusionMatrix total;
        for (std::size_t v = 0; v < ctx.manifest.videos.size(); ++v) {
          total += confusion_matrix(by_video.at(ctx.manifest.videos[v].video_id),
                                    labels.at(raters[k])[v]);
        }
        reports.push_back(alignment_from_confusion(total, raters[k], condition, r.model_name));
        artifacts["reports/alignment_" + *r.condition + "_" + raters[k] + ".json"] =
            pretty(to_json(reports.back()));
      }
      if (const auto it = r.input_hashes.find("describe_run"); it != r.input_hashes.end()) {
        if (describe_run && *describe_run != it->second) {
          if (!references.empty()) {
            throw invalid_input("judge runs come from different describe runs");
          }
        }
        describe_run = it->second;
      }
    }
    artifacts["reports/radar.json"] = pretty(export_radar(reports));
    text += "\nAlignment with raters\n" + radar_summary_table(reports);

    if (raters.size() >= 2) {
      json ranking = json::array();
      text += "\nRater ranking by macro F1\n";
      for (const auto& c : compare_raters(reports)) {
        ranking.push_back(to_json(c));
        text += to_string(c.condition) + ":";
        for (const auto& e : c.by_macro_f1) {
          char buf[64];
          std::snprintf(buf, sizeof buf, " %d. %s (%.2f)", e.rank, e.rater_id.c_str(), e.score);
          text += buf;
        }
        text += c.has_ties ? " [ties]\n" : "\n";
      }
      artifacts["reports/ranking.json"] = pretty(ranking);
    }

    if (!references.empty() && describe_run) {
      const auto records = values_of(read_records<BehaviourRecord>(
          store.run_dir(*describe_run) / "descriptions.jsonl", "descriptions.jsonl"));
      const auto refs = values_of(references);
      const auto accuracy = score_descriptions(records, refs);
      artifacts["reports/field_accuracy.json"] = pretty(encode(accuracy));
      text += "\nDescription accuracy (mean / median / max / min)\n";
      for (CueField f : {CueField::kGaze, CueField::kAction, CueField::kVocalisation}) {
        const auto& s = accuracy.of(f).stats;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-13s %.4f %.4f %.4f %.4f\n",
                      std::string(to_string(f)).c_str(), s.mean, s.median, s.max, s.min);
        text += buf;
      }
    }

    artifacts["reports/summary.txt"] = text;
    summary.summary_text = text;
    for (const auto& [name, bytes] : artifacts) summary.reports.push_back(name);
    detail::finish_run(store, *opened, artifacts, true);
  }

  if (options.out) {
    for (const auto& rel : summary.reports) {
      write_file_atomic(*options.out / fs::path(rel).filename(),
                        store.read_artifact(summary.run_id, rel));
    }
  }
  return summary;
}

}  // namespace ja
