#include "ja/eval/ranking.hpp"

#include <algorithm>
#include <set>

#include "ja/error.hpp"

namespace ja {
namespace {

using nlohmann::json;

// Sorts best first by score (stable on input order) and assigns
// competition ranks.
std::vector<RankEntry> rank(std::vector<RankEntry> entries, bool* ties) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const RankEntry& a, const RankEntry& b) {
                     return a.score > b.score;
                   });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].score == entries[i - 1].score) {
      entries[i].rank = entries[i - 1].rank;
      if (ties) *ties = true;
    } else {
      entries[i].rank = static_cast<int>(i) + 1;
    }
  }
  return entries;
}

json entries_json(const std::vector<RankEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    out.push_back({{"rater_id", e.rater_id}, {"score", e.score}, {"rank", e.rank}});
  }
  return out;
}

}  // namespace

std::vector<ConditionRanking> compare_raters(
    std::span<const AlignmentReport> reports) {
  std::vector<ConditionRanking> out;
  for (const auto& condition : kConditionGrid) {
    std::vector<const AlignmentReport*> group;
    std::set<std::string> raters;
    for (const auto& r : reports) {
      if (!(r.condition == condition)) continue;
      if (!raters.insert(r.rater_id).second) {
        throw invalid_input("rater " + r.rater_id + " appears twice for " +
                            to_string(condition));
      }
      group.push_back(&r);
    }
    if (group.empty()) continue;
    if (group.size() < 2) {
      throw invalid_input("comparing raters needs at least two raters for " +
                          to_string(condition));
    }
    ConditionRanking ranking;
    ranking.condition = condition;
    std::vector<RankEntry> macro;
    for (const auto* r : group) macro.push_back({r->rater_id, r->macro.f1, 1});
    ranking.by_macro_f1 = rank(std::move(macro), &ranking.has_ties);
    for (Label label : kAllLabels) {
      std::vector<RankEntry> entries;
      for (const auto* r : group) {
        entries.push_back({r->rater_id, r->of(label).f1, 1});
      }
      ranking.by_class_f1[index_of(label)] = rank(std::move(entries), nullptr);
    }
    for (const auto* r : group) {
      std::vector<Label> labels(kAllLabels.begin(), kAllLabels.end());
      std::stable_sort(labels.begin(), labels.end(), [r](Label a, Label b) {
        return r->of(a).f1 > r->of(b).f1;
      });
      ClassOrdering ordering{r->rater_id, {}};
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0 && r->of(labels[i]).f1 == r->of(labels[i - 1]).f1) {
          ordering.tiers.back().push_back(labels[i]);
        } else {
          ordering.tiers.push_back({labels[i]});
        }
      }
      ranking.class_orderings.push_back(std::move(ordering));
    }
    out.push_back(std::move(ranking));
  }
  if (out.empty()) throw invalid_input("no reports to compare");
  return out;
}

json to_json(const ConditionRanking& ranking) {
  json by_class = json::object();
  for (Label label : kAllLabels) {
    by_class[std::string(to_string(label))] =
        entries_json(ranking.by_class_f1[index_of(label)]);
  }
  json orderings = json::array();
  for (const auto& o : ranking.class_orderings) {
    json tiers = json::array();
    for (const auto& tier : o.tiers) {
      json names = json::array();
      for (Label l : tier) names.push_back(to_string(l));
      tiers.push_back(names);
    }
    orderings.push_back({{"rater_id", o.rater_id}, {"tiers", tiers}});
  }
  return {{"condition", to_string(ranking.condition)},
          {"by_macro_f1", entries_json(ranking.by_macro_f1)},
          {"has_ties", ranking.has_ties},
          {"by_class_f1", by_class},
          {"class_orderings", orderings}};
}

}  // namespace ja
