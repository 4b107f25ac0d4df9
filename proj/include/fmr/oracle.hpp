#pragma once

/// @file oracle.hpp
/// Brute-force fault simulation. The simulator evaluates a model forward in
/// the reported and the intended world and classifies every wire; the
/// verifiers enumerate fault assignments to check derived causes against
/// their definitions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmr/expr.hpp"
#include "fmr/model.hpp"

namespace fmr {

struct WorldPair {
  Value reported;
  Value intended;

  bool operator==(const WorldPair&) const = default;
};

/// Values of the boundary variables in both worlds.
using FaultAssignment = std::map<std::string, WorldPair>;

std::string to_string(const FaultAssignment& a);

/// Evaluates a loop-free model under `assignment` and returns the failure
/// mode of every variable.
///
/// Inv is evaluated on one branch of 1/x: a zero input, or an input whose
/// sign differs between the worlds, raises DomainError. Lim with crossed
/// bounds (lower above upper) raises DomainError as well. Loops and
/// missing boundary values raise SimulationError.
std::map<std::string, FailureMode> simulate(const SystemModel& model,
                                            const FaultAssignment& assignment);

/// Intended values and deviation sizes used for real-valued variables.
struct RealGrid {
  std::vector<double> intended;
  std::vector<double> deviations;
};

/// Seed 0 is the base grid {-2,-1,-0.5,0,0.5,1,2} x {0.25,1,3}; other
/// seeds add four random intended values in (-3,3) and two random
/// deviations in (0,4), rounded to multiples of 1/64.
RealGrid real_grid(std::uint64_t seed);

/// The three documented grid seeds.
inline constexpr std::uint64_t kGridSeeds[] = {0, 1, 2};

struct OracleOptions {
  std::uint64_t seed = 0;
  /// Restrict enumeration to assignments agreeing with the model's known
  /// values and signs (for checking value-dependent results).
  bool honor_knowledge = false;
  std::size_t max_assignments = 10'000'000;
};

enum class Verdict {
  Proved,        // exhaustive enumeration, no counterexample
  Unrefuted,     // sampled enumeration, no counterexample
  Refuted,       // counterexample found
  Inconclusive,  // nothing to enumerate
};

std::string to_string(Verdict v);

struct VerifyResult {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t checked = 0;    // assignments simulated
  std::size_t witnesses = 0;  // assignments producing the target
  std::optional<FaultAssignment> counterexample;

  bool passed() const noexcept {
    return verdict == Verdict::Proved || verdict == Verdict::Unrefuted;
  }
};

/// Checks that `term` guarantees `target`: every assignment in which the
/// term's variables deviate as stated, all other boundary variables are
/// fault-free, and the target's intended value admits the effect (false
/// for t, true for f) must produce the target mode. Loops are broken
/// first.
VerifyResult verify_certain_cause(const SystemModel& model, const Term& term,
                                  const Literal& target, const OracleOptions& options = {});

/// Checks that every assignment producing `target` satisfies `expr`.
VerifyResult verify_minimum_conditions(const SystemModel& model, const Expr& expr,
                                       const Literal& target,
                                       const OracleOptions& options = {});

/// A failure truth table for a single Boolean component. Rows run over
/// (x1 reported, x1 intended, x2 reported, ...) in binary order, false
/// before true.
struct TruthTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Throws UnsupportedError for non-Boolean kinds or arity above 4.
TruthTable truth_table(Kind kind, std::size_t arity, const Attrs& attrs = {});

/// Left-aligned columns separated by two spaces, one line per row.
std::string render(const TruthTable& table);

}  // namespace fmr
