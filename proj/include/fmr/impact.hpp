#pragma once

/// @file impact.hpp
/// Comparing failure modes and scoring the effect of a proposed value
/// change on the system outputs.

#include <string>
#include <string_view>
#include <vector>

#include "fmr/model.hpp"
#include "fmr/oracle.hpp"

namespace fmr {

/// Signed difference between two modes of one family: 1 for h against l
/// (t against f), 0.5 for h/t against m, 0 for equal modes, and the
/// negations for the mirrored cases. m against h/t scores -0.5 and m
/// against l/f scores 0.5, keeping the function antisymmetric. Throws
/// TypeError when the modes belong to different families.
double cmp(FailureMode x, FailureMode z);

struct ImpactQuery {
  std::string variable;
  Value from;
  Value to;
  /// Outputs to score; empty means all system outputs.
  std::vector<std::string> outputs;
};

struct OutputImpact {
  std::string output;
  FailureMode before = FailureMode::Match;
  FailureMode after = FailureMode::Match;
  double score = 0;  // |cmp(before, after)|
};

struct ImpactResult {
  std::vector<OutputImpact> outputs;
  double total = 0;
};

/// Simulates the model twice with the variable's reported value pinned to
/// `from` and then `to`, keeping the intended world of `baseline`, and sums
/// |cmp| over the chosen outputs. The variable must be a boundary variable.
ImpactResult impact(const SystemModel& model, const ImpactQuery& query,
                    const FaultAssignment& baseline);

/// Baseline assignment from the model's known values. Certain variables
/// need one known value, suspicious ones both. Throws Error("impact") when
/// a boundary variable is not fully known.
FaultAssignment baseline_assignment(const SystemModel& model);

/// Parses "T"/"F"/"true"/"false" for Boolean and a decimal number for real
/// variables. Throws TypeError on malformed text.
Value parse_value(std::string_view text, ValueType type);

}  // namespace fmr
