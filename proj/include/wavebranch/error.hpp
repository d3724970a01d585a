#pragma once

#include <stdexcept>
#include <string>

namespace wavebranch {

enum class ErrorKind {
  Domain,
  SingularInput,
  NoSolution,
  ShootingDegeneracy,
  BracketFailure,
  DiscretizationFailure,
  NearResonance,
  Stagnation,
  HodographBreakdown,
  NonConvergence,
  NoRoot,
  Validation,
};

const char* to_string(ErrorKind kind);

/// Numerical failure raised by one of the toolkit modules. The CLI reports
/// `module()` and `kind()` verbatim so failures are traceable to their origin.
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorKind kind, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)), kind_(kind) {}

  const std::string& module() const noexcept { return module_; }
  ErrorKind kind() const noexcept { return kind_; }
  /// "module.kind", e.g. "stream.singular_input".
  std::string name() const { return module_ + "." + to_string(kind_); }

 private:
  std::string module_;
  ErrorKind kind_;
};

}  // namespace wavebranch
