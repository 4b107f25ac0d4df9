#pragma once

/// @file knowledge.hpp
/// The reasoning policy and the prior knowledge it may draw on.

#include <map>
#include <optional>
#include <string>

#include "fmr/expr.hpp"
#include "fmr/model.hpp"

namespace fmr {

/// Whether results must guarantee the effect (certain causes) or merely be
/// implied by it (minimum conditions).
enum class CauseMode { CertainCauses, MinimumConditions };

/// Whether known signs and values may refine the component models.
enum class ValueMode { Independent, Dependent };

struct Policy {
  CauseMode cause = CauseMode::CertainCauses;
  ValueMode values = ValueMode::Independent;

  bool operator==(const Policy&) const = default;
};

/// "certain" / "minimum" and "independent" / "dependent", the CLI spellings.
std::string to_string(CauseMode mode);
std::string to_string(ValueMode mode);
std::optional<CauseMode> cause_mode_from_string(std::string_view text) noexcept;
std::optional<ValueMode> value_mode_from_string(std::string_view text) noexcept;
std::string describe(const Policy& policy);

/// A read-only view of a model's variable knowledge under one policy.
/// Value knowledge is only visible under the value-dependent policy, so
/// value-independent analyses use nothing but failure modes and the
/// certain/suspicious classification.
class KnowledgeContext {
 public:
  /// Throws Error("system-model") when the dependent policy is requested
  /// for a model that carries no sign or value knowledge at all.
  KnowledgeContext(const SystemModel& model, Policy policy);

  const Policy& policy() const noexcept { return policy_; }
  bool value_dependent() const noexcept {
    return policy_.values == ValueMode::Dependent;
  }

  /// Unknown names count as suspicious.
  bool is_certain(const std::string& var) const;

  /// For certain variables the reported and intended values coincide, so
  /// knowing either gives both.
  std::optional<Value> reported(const std::string& var) const;
  std::optional<Value> intended(const std::string& var) const;
  /// Sign of the reported value, from a known value or a stable sign.
  std::optional<Sign> reported_sign(const std::string& var) const;
  /// Sign of the intended value.
  std::optional<Sign> intended_sign(const std::string& var) const;
  /// A sign that holds in both worlds: declared, implied by equal signs of
  /// known reported and intended values, or by certainty.
  std::optional<Sign> stable_sign(const std::string& var) const;

 private:
  struct Entry {
    bool certain = false;
    Knowledge known;
  };
  const Entry* entry(const std::string& var) const;

  Policy policy_;
  std::map<std::string, Entry> vars_;
};

/// simplify() with certainty taken from the context.
Expr simplify(const Expr& e, const KnowledgeContext& ctx);

}  // namespace fmr
