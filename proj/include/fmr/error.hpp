#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fmr {

/// Base of every error raised by the library. `module()` names the
/// subsystem that raised it so front ends can report provenance.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// Mixing a real-valued and a Boolean quantity, or a failure mode that does
/// not belong to the variable's type family.
class TypeError : public Error {
 public:
  explicit TypeError(const std::string& what) : Error("failure-algebra", what) {}
};

/// Normal-form conversion exceeded the configured term cap.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& module, const std::string& what)
      : Error(module, what) {}
};

/// A single model-file or validation problem.
struct Diagnostic {
  std::string code;     // short machine tag, e.g. "undeclared-variable"
  std::string subject;  // variable or component the diagnostic refers to
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

class ModelError : public Error {
 public:
  explicit ModelError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// The catalogue has no model for the requested (kind, mode) pair or for
/// the given variable classification.
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what)
      : Error("component-models", what) {}
};

/// The requested effect cannot occur at all, e.g. a product with a
/// parameter known to be zero can never deviate.
class UnreachableError : public Error {
 public:
  explicit UnreachableError(const std::string& what)
      : Error("component-models", what) {}
};

class SimulationError : public Error {
 public:
  explicit SimulationError(const std::string& what) : Error("oracle", what) {}
};

/// Evaluating a partial function outside its domain (Inv at zero).
class DomainError : public SimulationError {
 public:
  explicit DomainError(const std::string& what) : SimulationError(what) {}
};

}  // namespace fmr
