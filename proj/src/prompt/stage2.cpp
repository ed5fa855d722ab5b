#include "ja/prompt/stage2.hpp"

#include <cctype>
#include <map>

#include "ja/core/text.hpp"
#include "ja/prompt/errors.hpp"
#include "segment_heading.hpp"

namespace ja {
namespace {

std::string subject_of(Role role) {
  return role == Role::kParent ? "The parent" : "The child";
}

// "The parent looked at the toy." -> "Looked at the toy."
std::string drop_subject(const std::string& sentence, Role role) {
  const std::string subject = subject_of(role) + " ";
  if (!text::istarts_with(sentence, subject)) return sentence;
  std::string rest = sentence.substr(subject.size());
  if (!rest.empty()) {
    rest[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(rest[0])));
  }
  return rest;
}

std::string restore_subject(std::string_view text, Role role) {
  std::string s(text::trim(text));
  if (text::istarts_with(s, subject_of(role)) || s.empty()) return s;
  s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return subject_of(role) + " " + s;
}

std::string cue_text(const CueSentences& cues, CueField field, Role role) {
  if (field == CueField::kVocalisation && !cues.vocalisation) {
    return std::string(kNoneToken) + ".";
  }
  return drop_subject(field_text(cues, field), role);
}

std::string field_title(CueField field) {
  switch (field) {
    case CueField::kGaze: return "Gaze";
    case CueField::kAction: return "Action";
    case CueField::kVocalisation: return "Vocalisation";
    case CueField::kEngagement: return "Engagement";
  }
  return {};
}

void check_exemplars(PromptCondition condition,
                     const std::optional<ExemplarTriplet>& exemplars) {
  if (condition.shots == Shots::kZero && exemplars) {
    throw invalid_input("zero-shot condition must not carry exemplars");
  }
  if (condition.shots == Shots::kFew) {
    if (!exemplars) throw invalid_input("few-shot condition needs exemplars");
    for (Label label : kAllLabels) {
      if ((*exemplars)[index_of(label)].judgement != label) {
        throw invalid_input(
            "exemplars must be one per label in Strong/Moderate/Poor order");
      }
    }
  }
}

// Strips "[...]", emphasis and trailing punctuation, keeping the first word.
std::string label_token(std::string_view rest) {
  std::string s = text::strip_markdown(rest);
  std::string_view t = text::trim(s);
  if (t.starts_with('[')) {
    t.remove_prefix(1);
    if (const auto close = t.find(']'); close != std::string_view::npos) {
      t = t.substr(0, close);
    }
  }
  t = text::trim(t);
  const auto space = t.find_first_of(" \t");
  if (space != std::string_view::npos) t = t.substr(0, space);
  while (!t.empty() && std::string_view(".,;:!)]").find(t.back()) !=
                           std::string_view::npos) {
    t.remove_suffix(1);
  }
  return std::string(t);
}

Label require_label(std::size_t segment_number, std::string_view rest) {
  const std::string token = label_token(rest);
  const auto label = parse_label(token);
  if (!label) {
    throw InvalidLabelError(segment_number, std::string(text::trim(rest)));
  }
  return *label;
}

enum class TripleKey { kObservation, kReasoning, kJudgement };

struct KeyedLine {
  TripleKey key;
  std::string value;
};

std::optional<KeyedLine> triple_key(std::string_view clean) {
  std::string_view s = clean;
  // "1. Observation:" numbering
  while (!s.empty() && (std::isdigit(static_cast<unsigned char>(s.front())) ||
                        s.front() == '.' || s.front() == ')' ||
                        s.front() == ' ')) {
    s.remove_prefix(1);
  }
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string_view key = text::trim(s.substr(0, colon));
  const std::string value(text::trim(s.substr(colon + 1)));
  if (text::iequals(key, "observation")) {
    return KeyedLine{TripleKey::kObservation, value};
  }
  if (text::iequals(key, "reasoning")) {
    return KeyedLine{TripleKey::kReasoning, value};
  }
  if (text::iequals(key, "judgement") || text::iequals(key, "judgment") ||
      text::iequals(key, "final judgement") ||
      text::iequals(key, "final judgment")) {
    return KeyedLine{TripleKey::kJudgement, value};
  }
  return std::nullopt;
}

class OutputCollector {
 public:
  void add(std::size_t number, JudgementOutput out, Stage2Parse& parse) {
    out.segment_index = number - 1;
    if (by_index_.count(out.segment_index)) {
      parse.warnings.push_back("segment " + std::to_string(number) +
                               " answered more than once; keeping the last");
    }
    by_index_[out.segment_index] = std::move(out);
  }
  bool empty() const { return by_index_.empty(); }
  void finish(Stage2Parse& parse) {
    for (auto& [index, out] : by_index_) parse.outputs.push_back(std::move(out));
  }

 private:
  std::map<std::size_t, JudgementOutput> by_index_;
};

Stage2Parse parse_plain(const std::string& raw) {
  Stage2Parse parse;
  OutputCollector collector;
  for (std::string_view line : text::split_lines(raw)) {
    const std::string clean = text::strip_markdown(line);
    const auto prefix = segment_prefix(clean);
    if (!prefix || prefix->rest.empty() || prefix->number == 0) continue;
    JudgementOutput out;
    out.label = require_label(prefix->number, prefix->rest);
    collector.add(prefix->number, std::move(out), parse);
  }
  if (collector.empty()) {
    throw ParseError("no 'Segment N: label' lines in response", raw);
  }
  collector.finish(parse);
  return parse;
}

Stage2Parse parse_reasoning(const std::string& raw) {
  Stage2Parse parse;
  OutputCollector collector;

  std::optional<std::size_t> heading;
  std::size_t last_number = 0;
  std::optional<std::string> observation;
  std::optional<std::string> reasoning;
  std::optional<std::string>* capturing = nullptr;

  auto append = [](std::optional<std::string>& target, std::string_view text) {
    if (target->empty()) {
      *target = std::string(text);
    } else {
      *target += "\n";
      *target += text;
    }
  };
  auto reset = [&] {
    heading.reset();
    observation.reset();
    reasoning.reset();
    capturing = nullptr;
  };

  for (std::string_view line : text::split_lines(raw)) {
    const std::string_view trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    const std::string clean = text::strip_markdown(trimmed);

    if (const auto prefix = segment_prefix(clean); prefix && prefix->number) {
      const auto label = parse_label(label_token(prefix->rest));
      if (!prefix->rest.empty() && label) {
        JudgementOutput out;
        out.label = *label;
        out.observation_text = observation;
        out.reasoning_text = reasoning;
        collector.add(prefix->number, std::move(out), parse);
        last_number = prefix->number;
        reset();
      } else {
        reset();
        heading = prefix->number;
      }
      continue;
    }

    if (const auto keyed = triple_key(clean)) {
      switch (keyed->key) {
        case TripleKey::kObservation:
          observation = keyed->value;
          capturing = &observation;
          break;
        case TripleKey::kReasoning:
          reasoning = keyed->value;
          capturing = &reasoning;
          break;
        case TripleKey::kJudgement: {
          const std::size_t number = heading.value_or(last_number + 1);
          JudgementOutput out;
          out.label = require_label(number, keyed->value);
          out.observation_text = observation;
          out.reasoning_text = reasoning;
          collector.add(number, std::move(out), parse);
          last_number = number;
          reset();
          break;
        }
      }
      continue;
    }

    if (capturing) append(*capturing, trimmed);
  }
  if (collector.empty()) {
    throw ParseError("no Judgement lines in reasoning response", raw);
  }
  collector.finish(parse);
  return parse;
}

}  // namespace

std::string bracket_line(const BehaviourRecord& record, CueField field) {
  return field_title(field) + ": [Parent] " +
         cue_text(record.parent, field, Role::kParent) + " [Child] " +
         cue_text(record.child, field, Role::kChild);
}

std::string observation_block(const BehaviourRecord& record, bool engagement) {
  std::string out = bracket_line(record, CueField::kGaze) + "\n" +
                    bracket_line(record, CueField::kAction) + "\n" +
                    bracket_line(record, CueField::kVocalisation);
  if (engagement && (record.parent.engagement || record.child.engagement)) {
    out += "\n" + bracket_line(record, CueField::kEngagement);
  }
  return out;
}

RenderedPrompt render_stage2_prompt(
    std::span<const BehaviourRecord> records, PromptCondition condition,
    const std::optional<ExemplarTriplet>& exemplars,
    const TemplateStore& templates, const Stage2Options& options) {
  if (records.empty()) {
    throw invalid_input("judgement prompt needs at least one record");
  }
  check_exemplars(condition, exemplars);
  const bool reasoning = condition.style == Style::kReasoning;

  std::string examples;
  if (exemplars) {
    examples = "\nExamples:";
    for (std::size_t i = 0; i < exemplars->size(); ++i) {
      const auto& ex = (*exemplars)[i];
      examples += "\n\nExample " + std::to_string(i + 1) + ":\nObservation:\n" +
                  ex.observation;
      if (reasoning && ex.reasoning) examples += "\nReasoning: " + *ex.reasoning;
      examples += "\nJudgement: " + std::string(to_string(ex.judgement));
    }
  }

  std::string segments = "\nSegments:";
  for (std::size_t i = 0; i < records.size(); ++i) {
    segments += "\n\nSegment " + std::to_string(i + 1) + ":\n" +
                observation_block(records[i], options.engagement);
  }

  std::string context;
  if (!options.developmental_note.empty()) {
    context = "\nDevelopmental context: " + options.developmental_note;
  }

  RenderedPrompt prompt;
  prompt.stage = Stage::kJudge;
  prompt.condition = condition;
  prompt.text = fill_template(
      templates.get(reasoning ? kStage2ReasoningTemplate : kStage2PlainTemplate),
      {{"context", context}, {"examples", examples}, {"segments", segments}});
  for (const auto& r : records) prompt.segments.push_back(r.segment);
  return prompt;
}

Stage2Parse parse_stage2_response(const std::string& raw, Style style) {
  if (text::trim(raw).empty()) throw ParseError("empty judgement response", raw);
  return style == Style::kReasoning ? parse_reasoning(raw) : parse_plain(raw);
}

std::string emit_stage2_response(std::span<const JudgementOutput> outputs,
                                 Style style) {
  std::string out;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const auto& o = outputs[i];
    const std::string number = std::to_string(o.segment_index + 1);
    const std::string label(to_string(o.label));
    if (style == Style::kNonReasoning) {
      out += "Segment " + number + ": " + label + "\n";
      continue;
    }
    if (i) out += "\n";
    out += "Segment " + number + ":\n";
    auto field = [&out](const char* key, const std::string& value) {
      out += key;
      out += value.find('\n') == std::string::npos ? " " : "\n";
      out += value + "\n";
    };
    if (o.observation_text) field("Observation:", *o.observation_text);
    if (o.reasoning_text) field("Reasoning:", *o.reasoning_text);
    out += "Judgement: " + label + "\n";
  }
  return out;
}

std::vector<BehaviourRecord> read_prompt_records(const RenderedPrompt& prompt) {
  std::vector<BehaviourRecord> records;
  bool in_segments = false;
  BehaviourRecord* current = nullptr;
  for (std::string_view line : text::split_lines(prompt.text)) {
    const std::string_view t = text::trim(line);
    if (t == "Segments:") {
      in_segments = true;
      continue;
    }
    if (!in_segments) continue;
    if (const auto prefix = segment_prefix(t); prefix && prefix->rest.empty()) {
      if (prefix->number == 0 || prefix->number > prompt.segments.size()) {
        current = nullptr;
        continue;
      }
      records.emplace_back();
      current = &records.back();
      current->segment = prompt.segments[prefix->number - 1];
      continue;
    }
    if (!current) continue;
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) continue;
    const auto field = parse_cue_field(t.substr(0, colon));
    if (!field) continue;
    const std::string_view rest = t.substr(colon + 1);
    const auto p = rest.find("[Parent]");
    const auto c = rest.find("[Child]");
    if (p == std::string_view::npos || c == std::string_view::npos || c < p) {
      continue;
    }
    const std::string_view parent = rest.substr(p + 8, c - p - 8);
    const std::string_view child = rest.substr(c + 7);
    for (auto [role, value] : {std::pair{Role::kParent, parent},
                               std::pair{Role::kChild, child}}) {
      auto& cues = current->of(role);
      switch (*field) {
        case CueField::kGaze: cues.gaze = restore_subject(value, role); break;
        case CueField::kAction: cues.action = restore_subject(value, role); break;
        case CueField::kVocalisation:
          if (is_none_token(value)) {
            cues.vocalisation.reset();
          } else {
            cues.vocalisation = restore_subject(value, role);
          }
          break;
        case CueField::kEngagement:
          cues.engagement = restore_subject(value, role);
          break;
      }
    }
  }
  return records;
}

}  // namespace ja
