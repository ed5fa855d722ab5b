#pragma once

#include <cstddef>
#include <string>

#include "ja/core/types.hpp"
#include "ja/error.hpp"
#include "ja/prompt/behaviour.hpp"

namespace ja {

// A Stage-1 response block lacked one role's cue. segment_number is the
// 1-based marker used in the prompt.
class FieldMissingError : public Error {
 public:
  FieldMissingError(std::size_t segment_number, Role role, CueField field);

  std::size_t segment_number() const noexcept { return segment_number_; }
  Role role() const noexcept { return role_; }
  CueField field() const noexcept { return field_; }

 private:
  std::size_t segment_number_;
  Role role_;
  CueField field_;
};

class StructureError : public Error {
 public:
  explicit StructureError(const std::string& message)
      : Error(ErrorKind::kStructure, message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string raw_text)
      : Error(ErrorKind::kParse, message), raw_text_(std::move(raw_text)) {}

  const std::string& raw_text() const noexcept { return raw_text_; }

 private:
  std::string raw_text_;
};

class InvalidLabelError : public Error {
 public:
  InvalidLabelError(std::size_t segment_number, std::string token)
      : Error(ErrorKind::kInvalidLabel,
              "segment " + std::to_string(segment_number) + ": '" + token +
                  "' is not one of Strong/Moderate/Poor"),
        segment_number_(segment_number),
        token_(std::move(token)) {}

  std::size_t segment_number() const noexcept { return segment_number_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t segment_number_;
  std::string token_;
};

class ExemplarGapError : public Error {
 public:
  explicit ExemplarGapError(Label missing)
      : Error(ErrorKind::kExemplarGap,
              "exemplar library has no eligible " +
                  std::string(to_string(missing)) + " exemplar"),
        missing_(missing) {}

  Label missing() const noexcept { return missing_; }

 private:
  Label missing_;
};

}  // namespace ja
