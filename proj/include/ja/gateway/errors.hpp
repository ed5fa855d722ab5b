#pragma once

#include <string>

#include "ja/error.hpp"

namespace ja {

// Failure talking to a backend. Transient failures (HTTP 429, 5xx,
// connection errors) are retried by the gateway; the rest are not.
class BackendError : public Error {
 public:
  BackendError(const std::string& message, bool transient, int status = 0,
               int attempt_count = 1)
      : Error(ErrorKind::kBackendUnavailable, message),
        transient_(transient),
        status_(status),
        attempt_count_(attempt_count) {}

  bool transient() const noexcept { return transient_; }
  // HTTP status, or 0 when no response arrived.
  int status() const noexcept { return status_; }
  int attempt_count() const noexcept { return attempt_count_; }

 private:
  bool transient_;
  int status_;
  int attempt_count_;
};

// Authentication was refused or no credential was available. Never retried.
class CredentialError : public Error {
 public:
  explicit CredentialError(const std::string& message, int attempt_count = 1)
      : Error(ErrorKind::kCredential, message), attempt_count_(attempt_count) {}

  int attempt_count() const noexcept { return attempt_count_; }

 private:
  int attempt_count_;
};

}  // namespace ja
