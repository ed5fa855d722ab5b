#include "ja/eval/descriptions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "ja/core/rounding.hpp"

namespace ja {
namespace {

bool is_terminal_punct(char c) {
  return std::string_view(".!?,;:").find(c) != std::string_view::npos;
}

using RefKey = std::tuple<std::string, std::size_t, Role, CueField>;

constexpr std::array<CueField, 3> kScoredFields = {
    CueField::kGaze, CueField::kAction, CueField::kVocalisation};

FieldStats& field_slot(FieldAccuracyReport& report, CueField field) {
  switch (field) {
    case CueField::kGaze: return report.gaze;
    case CueField::kAction: return report.action;
    default: return report.vocalisation;
  }
}

}  // namespace

std::string normalise_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  while (!out.empty() &&
         (is_terminal_punct(out.back()) || out.back() == ' ')) {
    out.pop_back();
  }
  return out;
}

std::string_view to_string(CorrectionKind kind) {
  switch (kind) {
    case CorrectionKind::kAccepted: return "accepted";
    case CorrectionKind::kContradictionFixed: return "contradiction_fixed";
    case CorrectionKind::kGranularityRefined: return "granularity_refined";
  }
  return {};
}

std::optional<CorrectionKind> parse_correction_kind(std::string_view text) {
  for (auto k : {CorrectionKind::kAccepted, CorrectionKind::kContradictionFixed,
                 CorrectionKind::kGranularityRefined}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

CoverageError::CoverageError(std::string video_id, std::size_t segment_index,
                             Role role, CueField field)
    : Error(ErrorKind::kCoverage,
            "no adjudicated reference for " + video_id + " segment " +
                std::to_string(segment_index) + " " +
                std::string(to_string(role)) + " " +
                std::string(to_string(field))),
      video_id_(std::move(video_id)),
      segment_index_(segment_index),
      role_(role),
      field_(field) {}

AccuracyStats summarise_accuracies(std::span<const double> accuracies) {
  if (accuracies.empty()) throw invalid_input("no accuracies to summarise");
  std::vector<double> sorted(accuracies.begin(), accuracies.end());
  for (double a : sorted) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw invalid_input("accuracy outside [0, 1]");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  double sum = 0.0;
  for (double a : sorted) sum += a;
  const double median =
      n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  return {round_half_up(sum / static_cast<double>(n), 4),
          round_half_up(median, 4), round_half_up(sorted.back(), 4),
          round_half_up(sorted.front(), 4)};
}

const FieldStats& FieldAccuracyReport::of(CueField field) const {
  switch (field) {
    case CueField::kGaze: return gaze;
    case CueField::kAction: return action;
    case CueField::kVocalisation: return vocalisation;
    case CueField::kEngagement: break;
  }
  throw invalid_input("engagement is not a scored field");
}

FieldAccuracyReport score_descriptions(
    std::span<const BehaviourRecord> generated,
    std::span<const AdjudicatedReference> references) {
  if (generated.empty()) throw invalid_input("no generated descriptions");
  std::map<RefKey, std::string> ref_text;
  for (const auto& r : references) {
    ref_text[{r.video_id, r.segment_index, r.role, r.field}] =
        normalise_text(r.reference_text);
  }

  std::vector<std::string> order;
  std::map<std::string, std::array<VideoAccuracy, 3>> tallies;
  std::set<std::pair<std::string, std::size_t>> seen;
  for (const auto& rec : generated) {
    const auto& vid = rec.segment.video_id;
    if (!seen.insert({vid, rec.segment.index}).second) {
      throw invalid_input("segment " + vid + "#" +
                          std::to_string(rec.segment.index) +
                          " described twice");
    }
    if (!tallies.count(vid)) {
      order.push_back(vid);
      for (auto& t : tallies[vid]) t.video_id = vid;
    }
    for (Role role : {Role::kParent, Role::kChild}) {
      for (std::size_t f = 0; f < kScoredFields.size(); ++f) {
        const CueField field = kScoredFields[f];
        const auto it = ref_text.find({vid, rec.segment.index, role, field});
        if (it == ref_text.end()) {
          throw CoverageError(vid, rec.segment.index, role, field);
        }
        auto& tally = tallies[vid][f];
        ++tally.total;
        if (normalise_text(field_text(rec.of(role), field)) == it->second) {
          ++tally.correct;
        }
      }
    }
  }

  FieldAccuracyReport report;
  for (std::size_t f = 0; f < kScoredFields.size(); ++f) {
    auto& slot = field_slot(report, kScoredFields[f]);
    std::vector<double> values;
    for (const auto& vid : order) {
      slot.per_video.push_back(tallies[vid][f]);
      values.push_back(tallies[vid][f].accuracy());
    }
    slot.stats = summarise_accuracies(values);
  }
  return report;
}

std::vector<AdjudicatedReference> references_from_records(
    std::span<const BehaviourRecord> records) {
  std::vector<AdjudicatedReference> out;
  for (const auto& rec : records) {
    for (Role role : {Role::kParent, Role::kChild}) {
      for (CueField field : kScoredFields) {
        out.push_back({rec.segment.video_id, rec.segment.index, role, field,
                       field_text(rec.of(role), field),
                       CorrectionKind::kAccepted});
      }
    }
  }
  return out;
}

}  // namespace ja
