#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polarium {

enum class ErrorCode {
  InvalidArgument,
  ArithmeticError,
  UnsupportedFeature,
  ResourceLimit,
  PrecisionError,
  NoSqrtInF,
  FieldExtensionRequired,
  InternalInvariantViolation,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::ArithmeticError: return "arithmetic-error";
    case ErrorCode::UnsupportedFeature: return "unsupported-feature";
    case ErrorCode::ResourceLimit: return "resource-limit";
    case ErrorCode::PrecisionError: return "precision-error";
    case ErrorCode::NoSqrtInF: return "no-sqrt-in-F";
    case ErrorCode::FieldExtensionRequired: return "field-extension-required";
    case ErrorCode::InternalInvariantViolation: return "internal-invariant-violation";
  }
  return "unknown";
}

/// Every failure raised by the library. `module()` names the component that
/// detected it so the CLI can report it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string module, const std::string& msg) {
  throw Error(code, std::move(module), msg);
}

inline void require(bool cond, ErrorCode code, const char* module, const std::string& msg) {
  if (!cond) fail(code, module, msg);
}

}  // namespace polarium
