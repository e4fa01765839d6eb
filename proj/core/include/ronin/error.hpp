#pragma once

#include <stdexcept>
#include <string>

namespace ronin {

enum class ErrorCode {
  config,      // bad run configuration
  parse,       // malformed input file
  validation,  // data violates a manifest invariant
  io,          // missing/unreadable/unwritable file
  backend,     // inpainting or embedding backend failure
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::config: return "config";
    case ErrorCode::parse: return "parse";
    case ErrorCode::validation: return "validation";
    case ErrorCode::io: return "io";
    case ErrorCode::backend: return "backend";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace ronin
