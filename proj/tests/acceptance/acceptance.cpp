// One PASS/FAIL line per primary acceptance criterion. Exit status is
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ja/core/labelling.hpp"
#include "ja/core/rounding.hpp"
#include "ja/core/segmentation.hpp"
#include "ja/eval/alignment.hpp"
#include "ja/eval/descriptions.hpp"
#include "ja/pipeline/commands.hpp"
#include "ja/pipeline/synthetic.hpp"
#include "ja/prompt/stage1.hpp"
#include "ja/prompt/stage2.hpp"
#include "support/fixtures.hpp"
#include "support/golden.hpp"
#include "support/metric_oracle.hpp"
#include "support/prompt_fixtures.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ja;
using Clock = std::chrono::steady_clock;

// Thrown by check() with the reason a criterion failed.
struct Failure {
  std::string reason;
};

void check(bool ok, const std::string& reason) {
  if (!ok) throw Failure{reason};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void table3_reproduction() {
  const auto start = Clock::now();
  struct Row {
    std::array<long long, 3> counts;
    std::array<double, 3> printed;
  };
  const std::vector<Row> rows = {
      {ja::testing::kRater1Counts, {24.3, 74.0, 1.7}},
      {ja::testing::kRater2Counts, {30.6, 61.4, 8.0}},
      {ja::testing::kRater3Counts, {23.5, 68.5, 8.0}},
      {ja::testing::kCombinedCounts, {22.1, 76.3, 1.6}},
  };
  for (const auto& row : rows) {
    std::vector<Label> labels;
    for (Label l : kAllLabels) labels.insert(labels.end(), row.counts[index_of(l)], l);
    const auto d = label_distribution(labels);
    check(d.counts == row.counts, "counts differ");
    check(d.percentages == row.printed,
          "percentages for total " + std::to_string(d.total()) + " differ");
    check(distribution_from_counts(row.counts) == d, "count path disagrees");
  }
  check(seconds_since(start) < 1.0, "took longer than 1 s");
}

std::vector<SegmentLabelSet> columns(const std::vector<std::array<Label, 3>>& rows) {
  std::vector<SegmentLabelSet> sets(3);
  for (std::size_t r = 0; r < 3; ++r) {
    sets[r].rater_id = "r" + std::to_string(r + 1);
    sets[r].video_id = "all";
    for (const auto& row : rows) sets[r].labels.push_back(row[r]);
  }
  return sets;
}

void consensus_exclusion() {
  const auto table = ja::testing::table3_label_matrix();
  check(table.size() == 638, "fixture is not 638 rows");
  const auto consensus = aggregate_consensus(columns(table));
  const auto d = consensus_distribution(consensus);
  check(d.total() == 615, "expected 615 consensus labels, got " + std::to_string(d.total()));
  check(d.counts == ja::testing::kCombinedCounts, "consensus counts differ");

  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<std::size_t> size(1, 120);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rows = ja::testing::random_label_matrix(size(rng), rng());
    long long majority = 0;
    for (const auto& row : rows) {
      for (Label l : kAllLabels) {
        int votes = 0;
        for (Label x : row) votes += x == l;
        if (2 * votes > 3) ++majority;
      }
    }
    const auto c = aggregate_consensus(columns(rows));
    long long labelled = 0;
    for (const auto& x : c) labelled += x.label.has_value();
    check(labelled == majority, "trial " + std::to_string(trial) + " disagrees");
  }
}

void metric_oracle_equivalence() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> size(1, 50), label(0, 2);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = size(rng);
    std::vector<Label> ref, pred;
    std::vector<JudgementOutput> outputs;
    SegmentLabelSet set{"r", "v", {}};
    for (int i = 0; i < n; ++i) {
      ref.push_back(static_cast<Label>(label(rng)));
      pred.push_back(static_cast<Label>(label(rng)));
      outputs.push_back({static_cast<std::size_t>(i), pred.back(), {}, {}});
    }
    set.labels = ref;
    const auto report = compute_alignment(outputs, set, kConditionGrid[0], "m");
    const auto oracle = ja::testing::oracle_metrics(ref, pred);
    for (Label l : kAllLabels) {
      const auto c = index_of(l);
      check(report.of(l).precision == oracle.precision[c] &&
                report.of(l).recall == oracle.recall[c] && report.of(l).f1 == oracle.f1[c],
            "trial " + std::to_string(trial) + " class metrics differ");
    }
    check(report.macro.precision == oracle.macro_precision &&
              report.macro.recall == oracle.macro_recall &&
              report.macro.f1 == oracle.macro_f1,
          "trial " + std::to_string(trial) + " macro metrics differ");
  }
  check(std::abs(harmonic_mean(0.72, 0.61) - 0.66) <= 0.005, "P=.72 R=.61 does not give .66");
}

void table4_aggregation() {
  std::vector<double> action;
  for (const auto& f : ja::testing::table4_action_fixture()) {
    action.push_back(static_cast<double>(f.correct) / (2.0 * f.segments));
  }
  const auto s = summarise_accuracies(action);
  check(s.mean == 0.8774, "mean");
  check(s.median == 0.9464, "median");
  check(s.max == 1.0, "max");
  check(s.min == 0.625, "min");
}

void prompt_goldens() {
  const auto templates = TemplateStore::load_default();
  const auto records = ja::testing::golden_records();
  std::vector<SegmentRef> segs;
  for (const auto& r : records) segs.push_back(r.segment);
  const auto stage1 = render_stage1_prompt(segs, templates).text;
  check(ja::testing::matches_golden("stage1.txt", stage1), "stage1 golden differs");
  check(stage1.rfind("You are watching a video of a parent interacting with a child.", 0) == 0,
        "stage1 opening sentence missing");
  for (auto c : kConditionGrid) {
    std::optional<ExemplarTriplet> ex;
    if (c.shots == Shots::kFew) ex = select_exemplars(ja::testing::builtin_exemplars(), {}, c.style);
    const auto text = render_stage2_prompt(records, c, ex, templates).text;
    const auto name = "stage2_" + to_string(c) + ".txt";
    check(ja::testing::matches_golden(name, text), name + " differs");
    check(text.rfind("You are a speech-language pathologist.", 0) == 0,
          name + " opening sentence missing");
    if (c.style == Style::kNonReasoning) {
      check(text.find("Segment 1: [Strong/Moderate/Poor]") != std::string::npos,
            name + " format line missing");
    }
  }
}

void parser_round_trips() {
  const auto templates = TemplateStore::load_default();
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<std::size_t> count(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool engagement = trial % 4 == 0;
    const auto records = ja::testing::random_records(rng, count(rng), engagement);
    std::vector<SegmentRef> segs;
    for (const auto& r : records) segs.push_back(r.segment);
    const auto prompt = render_stage1_prompt(segs, templates, {engagement});
    const auto parsed =
        parse_stage1_response(emit_stage1_response(records), prompt.segments, engagement);
    check(parsed.issues.empty() && parsed.records == records,
          "stage1 trial " + std::to_string(trial));

    for (auto c : {kConditionGrid[0], kConditionGrid[1]}) {
      const auto rendered = render_stage2_prompt(records, c, std::nullopt, templates, {engagement, {}});
      check(read_prompt_records(rendered) == records,
            "stage2 render trial " + std::to_string(trial));
      const auto outputs = ja::testing::random_judgements(rng, records.size(), c.style);
      const auto back = parse_stage2_response(emit_stage2_response(outputs, c.style), c.style);
      check(back.outputs == outputs && back.warnings.empty(),
            "stage2 " + std::string(to_string(c.style)) + " trial " + std::to_string(trial));
    }
  }

  const auto& corpus = ja::testing::malformed_corpus();
  check(corpus.size() >= 20, "malformed corpus has fewer than 20 cases");
  const std::vector<SegmentRef> two = {{"m", 0, 0.0, 5.0}, {"m", 1, 5.0, 10.0}};
  for (const auto& c : corpus) {
    std::optional<ErrorKind> got;
    try {
      if (c.kind == ja::testing::ResponseKind::kStage1) {
        parse_stage1_response(c.text, two).throw_if_issues();
      } else {
        parse_stage2_response(c.text, c.kind == ja::testing::ResponseKind::kStage2Reasoning
                                          ? Style::kReasoning
                                          : Style::kNonReasoning);
      }
    } catch (const Error& e) {
      got = e.kind();
    }
    check(got.has_value(), c.name + ": silently accepted");
    check(*got == c.expected, c.name + ": got " + to_string(*got) + ", expected " +
                                  to_string(c.expected));
  }
}

// Relative path -> bytes of every file under `root`.
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), root).string()] = read_text_file(e.path());
    }
  }
  return out;
}

void run_pipeline(const fs::path& root) {
  const ProjectStore store(root);
  const auto ingested = ingest(store, {write_synthetic_study(make_synthetic_study(), root), {}, {}});
  check(ingested.video_count == 26, "ingest did not yield 26 videos");
  const auto d = describe(store, {});
  check(d.sealed && d.errors.empty() && d.outputs == 638, "describe incomplete");
  const auto outcomes = judge(store, {});
  check(outcomes.size() == 4, "expected four conditions");
  for (const auto& o : outcomes) {
    check(o.run && o.run->sealed && o.run->errors.empty(),
          "judge " + to_string(o.condition) + " incomplete");
  }
  const auto e = evaluate(store, {});
  int alignments = 0;
  for (const auto& r : e.reports) alignments += r.rfind("reports/alignment_", 0) == 0;
  check(alignments == 12, "expected 12 alignment reports");
}

void end_to_end_determinism() {
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const auto base = fs::temp_directory_path() /
                    ("ja_acceptance_" + std::to_string(std::random_device{}()));
  struct Cleanup {
    fs::path p;
    ~Cleanup() { fs::remove_all(p); }
  } cleanup{base};
  const auto start = Clock::now();
  run_pipeline(base / "a");
  run_pipeline(base / "b");
  const double elapsed = seconds_since(start);
  check(elapsed < 30.0, "two full runs took " + std::to_string(elapsed) + " s");
  const auto a = snapshot(base / "a");
  const auto b = snapshot(base / "b");
  check(a.size() == b.size(), "file sets differ");
  for (const auto& [path, bytes] : a) {
    const auto it = b.find(path);
    check(it != b.end() && it->second == bytes, path + " differs between runs");
  }
  ::unsetenv("SOURCE_DATE_EPOCH");
}

void segmentation_properties() {
  std::mt19937_64 rng(10000);
  std::uniform_real_distribution<double> any(1e-3, 3600.0);
  std::uniform_int_distribution<int> whole(1, 720);
  std::uniform_real_distribution<double> small_tail(1e-4, 0.999);
  int short_tails = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double d = trial % 2 ? 5.0 * whole(rng) + small_tail(rng) : any(rng);
    const auto segs = segment_video(d);
    const auto fail = "duration " + std::to_string(d);
    check(!segs.empty() && segs.front().start_s == 0.0 && segs.back().end_s == d, fail);
    for (std::size_t i = 0; i < segs.size(); ++i) {
      check(segs[i].index == i && segs[i].end_s > segs[i].start_s, fail);
      if (i + 1 < segs.size()) {
        check(segs[i].end_s == segs[i + 1].start_s, fail + " has a gap");
        check(std::abs(segs[i].length() - 5.0) < 1e-9, fail + " has a short inner segment");
      }
    }
    check(segs.back().length() < 6.0, fail + " tail too long");
    if (segs.size() > 1) check(segs.back().length() >= 1.0 - 1e-9, fail + " kept a short tail");
    const double rem = std::fmod(d, 5.0);
    short_tails += d > 5.0 && rem > 0.0 && rem < 1.0;
  }
  check(short_tails >= 4000, "too few sub-second tails exercised");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"Table 3 reproduction", table3_reproduction},
      {"Consensus exclusion", consensus_exclusion},
      {"Metric oracle equivalence", metric_oracle_equivalence},
      {"Table 4 aggregation fixture", table4_aggregation},
      {"Prompt goldens", prompt_goldens},
      {"Parser round-trips", parser_round_trips},
      {"End-to-end determinism", end_to_end_determinism},
      {"Segmentation properties", segmentation_properties},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    try {
      run();
      std::cout << "PASS " << name << "\n";
    } catch (const Failure& f) {
      ++failed;
      std::cout << "FAIL " << name << ": " << f.reason << "\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "FAIL " << name << ": " << e.what() << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
