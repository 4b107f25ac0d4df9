#pragma once

/// @file catalogue.hpp
/// Local failure models: for one component and one output failure mode,
/// the expression over the component's arguments that explains it.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmr/expr.hpp"
#include "fmr/knowledge.hpp"
#include "fmr/model.hpp"

namespace fmr {

/// {cause} kind {effect and premises}. `weakened` is set when certain
/// causes were requested but the cause only holds as a minimum condition.
struct FailureScenario {
  Expr cause;
  Kind kind = Kind::And;
  Literal effect;
  std::vector<std::string> premises;
  bool weakened = false;
};

/// The catalogue entry for `component` producing `effect` on its output,
/// with literals on certain arguments already resolved.
///
/// Throws UnsupportedError when the effect mode does not fit the output
/// type or the kind has no model for the given classification (Lim with
/// suspicious bounds), and UnreachableError when the knowledge rules the
/// effect out (a product with a factor known to be zero).
FailureScenario local_model(const ComponentDecl& component, FailureMode effect,
                            const KnowledgeContext& ctx);

/// Any of the arguments deviating in the direction its gradient sign maps
/// the effect to. Throws UnsupportedError for Boolean effects.
Expr monotone_model(const std::vector<std::string>& args,
                    const std::vector<Sign>& gradient, FailureMode effect);

/// Arguments are the L*K literals in row-major order (row l, column k).
Expr dnf_model(const std::vector<std::string>& args, int L, int K,
               FailureMode effect, CauseMode mode);
Expr cnf_model(const std::vector<std::string>& args, int L, int K,
               FailureMode effect, CauseMode mode);

/// Certain causes of a k-out-of-n voter: any k commissions for t, any
/// n-k+1 omissions for f.
Expr koon_model(const std::vector<std::string>& args, int n, int k,
                FailureMode effect);

/// Product with a certain factor of known sign: the suspicious factor
/// deviates in the effect's direction, inverted for a negative factor.
/// Throws UnreachableError for a zero factor.
Expr mul_certain_param(const std::string& x, FailureMode effect, Sign param_sign);

/// One row of the reported-sign table for a product of two suspicious
/// factors. `cause` is a compact DNF: terms separated by '|', each term a
/// run of atoms "<arg><mode>" with arg 1 or 2 and mode h or l, or
/// "<arg>0" for "the factor's intended value is zero".
struct MulTableRow {
  FailureMode effect;
  Sign reported1;
  Sign reported2;
  const char* cause;
};

std::span<const MulTableRow> mul_table();

/// Instantiates the table row for (effect, reported signs) over the two
/// factor names. `intended_zero` answers "is the factor's intended value
/// zero?" when known; unknown intended-zero atoms are dropped because the
/// row premise makes each of them imply another disjunct.
Expr mul_table_model(const std::string& x1, const std::string& x2,
                     FailureMode effect, Sign reported1, Sign reported2,
                     const std::function<std::optional<bool>(int)>& intended_zero = {});

}  // namespace fmr
