#pragma once

#include <stdexcept>
#include <string>

namespace ja {

enum class ErrorKind {
  kInvalidInput,
  kConflict,
  kConfiguration,
  kFieldMissing,
  kStructure,
  kExemplarGap,
  kParse,
  kInvalidLabel,
  kBackendUnavailable,
  kCredential,
  kCoverage,
  kValidation,
  kVersion,
  kNotFound,
  kIo,
};

const char* to_string(ErrorKind kind);

// Base of every error the toolkit raises. Callers that only care about the
// category switch on kind(); richer context lives in the subclasses below.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_input(const std::string& message) {
  return Error(ErrorKind::kInvalidInput, message);
}
inline Error conflict(const std::string& message) {
  return Error(ErrorKind::kConflict, message);
}
inline Error configuration_error(const std::string& message) {
  return Error(ErrorKind::kConfiguration, message);
}
inline Error not_found(const std::string& message) {
  return Error(ErrorKind::kNotFound, message);
}
inline Error io_error(const std::string& message) {
  return Error(ErrorKind::kIo, message);
}

class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& message)
      : Error(ErrorKind::kValidation, path + ": " + message),
        path_(std::move(path)) {}

  // Location of the offending value, e.g. "videos[3].video_id".
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class VersionError : public Error {
 public:
  VersionError(int found, int supported)
      : Error(ErrorKind::kVersion,
              "schema_version " + std::to_string(found) +
                  " is newer than supported version " +
                  std::to_string(supported)),
        found_(found) {}

  int found() const noexcept { return found_; }

 private:
  int found_;
};

}  // namespace ja
