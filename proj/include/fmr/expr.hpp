#pragma once

/// @file expr.hpp
/// Boolean expressions over failure literals.
///
/// An Expr is an immutable, shared tree. The factory functions normalise
/// on construction: nested conjunctions/disjunctions are flattened,
/// constants are propagated, children are deduplicated and kept in
/// canonical order, and single-child connectives collapse to the child.
/// Structural equality is therefore meaningful for regression tests.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fmr/failure_mode.hpp"

namespace fmr {

/// The sentence "variable is in `mode`".
struct Literal {
  std::string variable;
  FailureMode mode = FailureMode::Match;

  /// Lexicographic by (variable name, mode letter).
  std::strong_ordering operator<=>(const Literal& other) const;
  bool operator==(const Literal& other) const = default;
};

std::string to_string(const Literal& lit);

/// Builds a literal, checking that `mode` belongs to `type`'s family.
Literal make_literal(std::string variable, ValueType type, FailureMode mode);

class Expr {
 public:
  enum class Kind { False, True, Literal, And, Or };

  /// Default-constructed expressions are ConstFalse.
  Expr();

  static Expr top();
  static Expr bottom();
  static Expr lit(Literal literal);
  static Expr lit(std::string variable, FailureMode mode);
  static Expr conj(std::vector<Expr> children);
  static Expr disj(std::vector<Expr> children);
  /// The wildcard "any failure mode" for a variable, desugared into the
  /// disjunction of its type family.
  static Expr any(const std::string& variable, ValueType type);

  Kind kind() const noexcept;
  bool is_true() const noexcept { return kind() == Kind::True; }
  bool is_false() const noexcept { return kind() == Kind::False; }
  bool is_literal() const noexcept { return kind() == Kind::Literal; }
  /// Only valid when is_literal().
  const Literal& literal() const;
  /// Empty for constants and literals.
  std::span<const Expr> children() const noexcept;

  std::strong_ordering operator<=>(const Expr& other) const;
  bool operator==(const Expr& other) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

Expr operator&&(const Expr& a, const Expr& b);
Expr operator||(const Expr& a, const Expr& b);

std::string to_string(const Expr& e);

/// Variables mentioned anywhere in `e`.
std::set<std::string> variables(const Expr& e);

/// Number of nodes, for reporting blowup.
std::size_t size(const Expr& e);

/// Truth value under an assignment of one mode per variable. A literal
/// x=u holds iff the assignment maps x to u.
bool eval(const Expr& e, const std::function<FailureMode(const std::string&)>& mode_of);
bool eval(const Expr& e, const std::map<std::string, FailureMode>& assignment);

/// Replaces literals for which `fn` returns an expression; other literals
/// are kept. The result is re-normalised.
Expr substitute(const Expr& e,
                const std::function<std::optional<Expr>(const Literal&)>& fn);

/// Swaps conjunction and disjunction, inverts every literal's mode and
/// exchanges the constants.
Expr dual(const Expr& e);

/// Applies the single-state axiom and certainty knowledge:
///  - a conjunction holding two distinct modes of one variable is false;
///  - a disjunction covering a variable's whole family is true;
///  - literals on certain variables are true for m and false otherwise.
/// Semantics are preserved under every assignment that gives certain
/// variables mode m.
Expr simplify(const Expr& e,
              const std::function<bool(const std::string&)>& is_certain = {});

inline constexpr std::size_t kDefaultDnfCap = 100000;

/// A conjunction of literals in canonical order.
using Term = std::vector<Literal>;

/// Disjunctive normal form as a list of terms. Terms that require two
/// modes of the same variable are unsatisfiable and dropped; subsumed
/// terms are removed. Throws BlowupError when more than `cap` terms are
/// alive at any point of the expansion.
std::vector<Term> dnf_terms(const Expr& e, std::size_t cap = kDefaultDnfCap);

/// `dnf_terms` folded back into an expression.
Expr to_dnf(const Expr& e, std::size_t cap = kDefaultDnfCap);

Expr from_terms(const std::vector<Term>& terms);

}  // namespace fmr
