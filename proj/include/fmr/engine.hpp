#pragma once

/// @file engine.hpp
/// Backward composition of local failure models through a system model.

#include <cstddef>
#include <string>
#include <vector>

#include "fmr/catalogue.hpp"
#include "fmr/expr.hpp"
#include "fmr/knowledge.hpp"
#include "fmr/model.hpp"

namespace fmr {

/// Suffix of the fresh variable that replaces a feedback wire at its
/// consumer. Model identifiers cannot contain '@', so it never collides.
inline constexpr const char* kPreviousSuffix = "@prev";

/// Rebinds every feedback wire at its consumer to a fresh certain boundary
/// variable named `<wire>@prev`, which stands for the wire's fault-free
/// value before the failure. Acyclic models are returned unchanged.
SystemModel break_loops(const SystemModel& model);

struct TraceStep {
  std::string component;
  FailureScenario scenario;
};

struct AnalysisResult {
  Literal target;
  Policy policy;
  /// Disjunctive normal form over boundary literals.
  Expr cause;
  /// Some local model on the path only held as a minimum condition.
  bool weakened = false;
  /// A wire in the target's cone feeds more than one argument slot, so
  /// certain-cause terms composed from local models are not guaranteed
  /// to be certain causes of the target.
  bool reconvergent = false;
  std::vector<FeedbackEdge> loops;
  std::vector<TraceStep> trace;
};

struct EngineOptions {
  std::size_t dnf_cap = kDefaultDnfCap;
};

/// Expands `target` backwards through the (loop-broken) model, replacing
/// every internal literal by its producer's local model, and returns the
/// result in simplified normal form. Throws Error("reasoning-engine") for
/// a target that is not a system output, BlowupError past the DNF cap,
/// and propagates catalogue errors.
AnalysisResult backward_reason(const SystemModel& model, const Literal& target,
                               const Policy& policy, const EngineOptions& options = {});

/// Minimal cut sets: normal-form terms, shortest first, then
/// lexicographic. A constant-false cause gives no sets; constant-true one
/// empty set.
std::vector<Term> explain(const AnalysisResult& result);

/// One-line summary of what the cut sets mean for a constant cause, or
/// empty for an ordinary cause.
std::string explain_note(const AnalysisResult& result);

}  // namespace fmr
