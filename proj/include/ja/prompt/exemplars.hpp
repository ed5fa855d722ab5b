#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "ja/core/types.hpp"
#include "ja/prompt/prompt.hpp"

namespace ja {

// An expert-labelled example for few-shot prompting.
struct Exemplar {
  std::string exemplar_id;
  // Bracket-style block: "Gaze: [Parent] ... [Child] ...", then Action and
  // Vocalisation lines.
  std::string observation;
  // Present only for exemplars meant for the reasoning condition.
  std::optional<std::string> reasoning;
  Label judgement = Label::kModerate;
  // All raters agreed on the source segment; required for few-shot use.
  bool unanimous = false;
  std::optional<SegmentRef> source_segment;
  std::optional<AgeBand> age_band;
  std::optional<Category> category;

  bool operator==(const Exemplar&) const = default;
};

struct RetrievalContext {
  std::optional<AgeBand> age_band;
  std::optional<Category> category;
};

// Exactly one exemplar per label, in Strong/Moderate/Poor order.
using ExemplarTriplet = std::array<Exemplar, 3>;

// Picks one unanimous exemplar per label. Candidates matching the age band
// rank first, then those matching the category, then library order. The
// reasoning style only considers exemplars carrying a reasoning line; the
// non-reasoning style strips reasoning from the result.
//
// Throws ExemplarGapError naming the first label with no candidate.
ExemplarTriplet select_exemplars(std::span<const Exemplar> library,
                                 const RetrievalContext& context, Style style);

}  // namespace ja
