#pragma once

#include <stdexcept>
#include <string>

namespace shellthermo {

enum class ErrorKind {
  DegenerateChart,
  SymmetryViolation,
  AssemblyFailure,
  SolveFailure,
  SizeExceeded,
  IncompatibleMeshes,
  InsufficientData,
  ParseError,
  ValidationError,
  IoError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateChart:    return "DegenerateChart";
    case ErrorKind::SymmetryViolation:  return "SymmetryViolation";
    case ErrorKind::AssemblyFailure:    return "AssemblyFailure";
    case ErrorKind::SolveFailure:       return "SolveFailure";
    case ErrorKind::SizeExceeded:       return "SizeExceeded";
    case ErrorKind::IncompatibleMeshes: return "IncompatibleMeshes";
    case ErrorKind::InsufficientData:   return "InsufficientData";
    case ErrorKind::ParseError:         return "ParseError";
    case ErrorKind::ValidationError:    return "ValidationError";
    case ErrorKind::IoError:            return "IoError";
  }
  return "Unknown";
}

class ShellError : public std::runtime_error {
public:
  ShellError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* kind_name() const { return to_string(kind_); }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw ShellError(kind, msg);
}

}  // namespace shellthermo
