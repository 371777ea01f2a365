#pragma once

#include <stdexcept>
#include <string>

namespace hullcoh {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  Parse,       ///< malformed input text
  Validation,  ///< well-formed input that violates a mathematical precondition
  Audit,       ///< an internal certificate failed (d^2 != 0, Wang inexact, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) { return {ErrorKind::Validation, what}; }
inline Error audit_error(const std::string& what) { return {ErrorKind::Audit, what}; }
inline Error parse_error(const std::string& what) { return {ErrorKind::Parse, what}; }

}  // namespace hullcoh
