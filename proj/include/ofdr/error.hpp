#pragma once

#include <stdexcept>
#include <string>

namespace ofdr {

enum class ErrorKind {
  InvalidSpec,
  InsufficientData,
  InvalidPoint,
  Domain,
  SpanMismatch,
  UndefinedRadius,
  Config,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the toolkit; `kind()` lets callers and the CLI
// distinguish failure classes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 protected:
  struct Preformatted {};
  Error(Preformatted, ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::InvalidPoint: return "invalid-point";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::SpanMismatch: return "span-mismatch";
    case ErrorKind::UndefinedRadius: return "undefined-radius";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace ofdr
