#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace greeneval {

// Error categories. The string form is the machine-greppable prefix the CLI
// prints before the human-readable message.
enum class ErrorCode {
  kDomain,
  kParse,
  kMalformedTrace,
  kInsufficientData,
  kDuplicate,
  kDimension,
  kShape,
  kUnsupportedLayer,
  kUnresolvedHardware,
  kInput,
  kIncomplete,
  kUnknownObjective,
  kIo,
  kExists,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "E_DOMAIN";
    case ErrorCode::kParse: return "E_PARSE";
    case ErrorCode::kMalformedTrace: return "E_MALFORMED_TRACE";
    case ErrorCode::kInsufficientData: return "E_INSUFFICIENT_DATA";
    case ErrorCode::kDuplicate: return "E_DUPLICATE";
    case ErrorCode::kDimension: return "E_DIMENSION";
    case ErrorCode::kShape: return "E_SHAPE";
    case ErrorCode::kUnsupportedLayer: return "E_UNSUPPORTED_LAYER";
    case ErrorCode::kUnresolvedHardware: return "E_UNRESOLVED_HARDWARE";
    case ErrorCode::kInput: return "E_INPUT";
    case ErrorCode::kIncomplete: return "E_INCOMPLETE";
    case ErrorCode::kUnknownObjective: return "E_UNKNOWN_OBJECTIVE";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kExists: return "E_EXISTS";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace greeneval
