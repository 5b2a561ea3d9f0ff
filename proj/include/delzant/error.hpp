#pragma once

#include <stdexcept>
#include <string>

namespace delzant {

enum class ErrorKind {
  InvalidInput,
  Domain,
  Inconsistency,
  EmptyFace,
  NonSmoothFace,
  BoundaryOfFace,
  Numerical,
  NoSolution,
  NotTorifiable,
  Degenerate,
  NoCompactTorification,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI,
/// the python bindings) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace delzant
