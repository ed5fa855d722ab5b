#include "ja/eval/alignment.hpp"

#include <vector>

#include "ja/core/rounding.hpp"
#include "ja/error.hpp"

namespace ja {
namespace {

using nlohmann::json;

ClassMetrics rounded(Fraction p, Fraction r, Fraction f1) {
  return {round_half_up(p, 2), round_half_up(r, 2), round_half_up(f1, 2)};
}

double number_at(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(path + "." + key, "expected a number");
  }
  return j.at(key).get<double>();
}

json metrics_json(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

ClassMetrics metrics_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  return {number_at(j, path, "precision"), number_at(j, path, "recall"),
          number_at(j, path, "f1")};
}

}  // namespace

long long ConfusionMatrix::row_sum(Label reference) const {
  long long s = 0;
  for (long long c : counts[index_of(reference)]) s += c;
  return s;
}

long long ConfusionMatrix::column_sum(Label predicted) const {
  long long s = 0;
  for (const auto& row : counts) s += row[index_of(predicted)];
  return s;
}

long long ConfusionMatrix::total() const {
  long long s = 0;
  for (const auto& row : counts) {
    for (long long c : row) s += c;
  }
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) counts[r][c] += other.counts[r][c];
  }
  return *this;
}

ConfusionMatrix confusion_matrix(std::span<const JudgementOutput> predicted,
                                 const SegmentLabelSet& reference) {
  const std::size_t n = reference.labels.size();
  if (predicted.size() != n) {
    throw invalid_input("video " + reference.video_id + ": " +
                        std::to_string(predicted.size()) +
                        " predictions for " + std::to_string(n) +
                        " reference segments");
  }
  std::vector<char> covered(n, 0);
  ConfusionMatrix m;
  for (const auto& p : predicted) {
    if (p.segment_index >= n || covered[p.segment_index]) {
      throw invalid_input("video " + reference.video_id +
                          ": prediction indices do not match reference "
                          "segments (index " +
                          std::to_string(p.segment_index) + ")");
    }
    covered[p.segment_index] = 1;
    ++m.counts[index_of(reference.labels[p.segment_index])][index_of(p.label)];
  }
  return m;
}

AlignmentReport alignment_from_confusion(const ConfusionMatrix& confusion,
                                         std::string rater_id,
                                         PromptCondition condition,
                                         std::string model_name) {
  AlignmentReport report;
  report.rater_id = std::move(rater_id);
  report.condition = condition;
  report.model_name = std::move(model_name);
  report.confusion = confusion;
  Fraction sum_p, sum_r, sum_f1;
  for (Label label : kAllLabels) {
    const long long tp = confusion.at(label, label);
    const long long col = confusion.column_sum(label);
    const long long row = confusion.row_sum(label);
    const Fraction p = Fraction::ratio(tp, col);
    const Fraction r = Fraction::ratio(tp, row);
    // 2TP / (2TP + FP + FN) equals 2PR/(P+R) and is 0 when TP is 0.
    const Fraction f1 = Fraction::ratio(2 * tp, tp + col + row - tp);
    report.per_class[index_of(label)] = rounded(p, r, f1);
    sum_p = sum_p + p;
    sum_r = sum_r + r;
    sum_f1 = sum_f1 + f1;
  }
  report.macro = rounded(sum_p / 3, sum_r / 3, sum_f1 / 3);
  return report;
}

AlignmentReport compute_alignment(std::span<const JudgementOutput> predicted,
                                  const SegmentLabelSet& reference,
                                  PromptCondition condition,
                                  std::string model_name) {
  return alignment_from_confusion(confusion_matrix(predicted, reference),
                                  reference.rater_id, condition,
                                  std::move(model_name));
}

json to_json(const AlignmentReport& r) {
  json per_class = json::object();
  for (Label label : kAllLabels) {
    per_class[std::string(to_string(label))] = metrics_json(r.of(label));
  }
  json rows = json::array();
  for (const auto& row : r.confusion.counts) rows.push_back(row);
  return {{"rater_id", r.rater_id},
          {"condition", to_string(r.condition)},
          {"model_name", r.model_name},
          {"per_class", per_class},
          {"macro", metrics_json(r.macro)},
          {"confusion", {{"labels", {"Strong", "Moderate", "Poor"}},
                         {"rows", rows}}}};
}

AlignmentReport alignment_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  auto string_at = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw ValidationError(path + "." + key, "expected a string");
    }
    return j.at(key).get<std::string>();
  };
  AlignmentReport r;
  r.rater_id = string_at("rater_id");
  const auto condition = parse_condition(string_at("condition"));
  if (!condition) throw ValidationError(path + ".condition", "unknown condition");
  r.condition = *condition;
  r.model_name = string_at("model_name");
  if (!j.contains("per_class") || !j.at("per_class").is_object()) {
    throw ValidationError(path + ".per_class", "expected an object");
  }
  for (Label label : kAllLabels) {
    const std::string name(to_string(label));
    const auto& pc = j.at("per_class");
    if (!pc.contains(name)) {
      throw ValidationError(path + ".per_class." + name, "missing");
    }
    r.per_class[index_of(label)] =
        metrics_from_json(pc.at(name), path + ".per_class." + name);
  }
  if (!j.contains("macro")) throw ValidationError(path + ".macro", "missing");
  r.macro = metrics_from_json(j.at("macro"), path + ".macro");
  const std::string cpath = path + ".confusion.rows";
  try {
    const auto& rows = j.at("confusion").at("rows");
    if (rows.size() != 3) throw ValidationError(cpath, "expected 3 rows");
    for (std::size_t i = 0; i < 3; ++i) {
      if (rows.at(i).size() != 3) {
        throw ValidationError(cpath + "[" + std::to_string(i) + "]",
                              "expected 3 counts");
      }
      for (std::size_t k = 0; k < 3; ++k) {
        const long long v = rows.at(i).at(k).get<long long>();
        if (v < 0) {
          throw ValidationError(
              cpath + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
              "negative count");
        }
        r.confusion.counts[i][k] = v;
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(cpath, e.what());
  }
  return r;
}

}  // namespace ja
