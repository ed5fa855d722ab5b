#include "ja/prompt/exemplars.hpp"

#include "ja/prompt/errors.hpp"

namespace ja {

ExemplarTriplet select_exemplars(std::span<const Exemplar> library,
                                 const RetrievalContext& context, Style style) {
  ExemplarTriplet out;
  for (Label label : kAllLabels) {
    const Exemplar* best = nullptr;
    int best_score = -1;
    for (const auto& candidate : library) {
      if (candidate.judgement != label || !candidate.unanimous) continue;
      if (style == Style::kReasoning && !candidate.reasoning) continue;
      const bool age = context.age_band && candidate.age_band == context.age_band;
      const bool cat = context.category && candidate.category == context.category;
      const int score = (age ? 2 : 0) + (cat ? 1 : 0);
      // Strict comparison keeps the earliest candidate among equals.
      if (score > best_score) {
        best = &candidate;
        best_score = score;
      }
    }
    if (!best) throw ExemplarGapError(label);
    Exemplar chosen = *best;
    if (style == Style::kNonReasoning) chosen.reasoning.reset();
    out[index_of(label)] = std::move(chosen);
  }
  return out;
}

}  // namespace ja
