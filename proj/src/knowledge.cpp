#include "fmr/knowledge.hpp"

#include "fmr/error.hpp"

namespace fmr {

std::string to_string(CauseMode mode) {
  return mode == CauseMode::CertainCauses ? "certain" : "minimum";
}

std::string to_string(ValueMode mode) {
  return mode == ValueMode::Independent ? "independent" : "dependent";
}

std::optional<CauseMode> cause_mode_from_string(std::string_view text) noexcept {
  if (text == "certain") return CauseMode::CertainCauses;
  if (text == "minimum") return CauseMode::MinimumConditions;
  return std::nullopt;
}

std::optional<ValueMode> value_mode_from_string(std::string_view text) noexcept {
  if (text == "independent") return ValueMode::Independent;
  if (text == "dependent") return ValueMode::Dependent;
  return std::nullopt;
}

std::string describe(const Policy& policy) {
  std::string causes = policy.cause == CauseMode::CertainCauses
                           ? "certain causes"
                           : "minimum conditions";
  return causes + ", value-" + to_string(policy.values);
}

KnowledgeContext::KnowledgeContext(const SystemModel& model, Policy policy)
    : policy_(policy) {
  bool any_knowledge = false;
  for (const auto& v : model.variables) {
    vars_[v.name] = Entry{v.cls == VarClass::Certain, v.known};
    any_knowledge = any_knowledge || !v.known.empty();
  }
  if (value_dependent() && !any_knowledge) {
    throw Error("system-model",
                "value-dependent reasoning needs at least one known sign or "
                "value in the model");
  }
}

const KnowledgeContext::Entry* KnowledgeContext::entry(const std::string& var) const {
  auto it = vars_.find(var);
  return it == vars_.end() ? nullptr : &it->second;
}

bool KnowledgeContext::is_certain(const std::string& var) const {
  const Entry* e = entry(var);
  return e && e->certain;
}

std::optional<Value> KnowledgeContext::reported(const std::string& var) const {
  const Entry* e = entry(var);
  if (!e || !value_dependent()) return std::nullopt;
  if (e->known.reported) return e->known.reported;
  if (e->certain) return e->known.intended;
  return std::nullopt;
}

std::optional<Value> KnowledgeContext::intended(const std::string& var) const {
  const Entry* e = entry(var);
  if (!e || !value_dependent()) return std::nullopt;
  if (e->known.intended) return e->known.intended;
  if (e->certain) return e->known.reported;
  return std::nullopt;
}

namespace {

std::optional<Sign> sign_of_value(const std::optional<Value>& v) {
  if (!v) return std::nullopt;
  if (const double* d = std::get_if<double>(&*v)) return sign_of(*d);
  return std::nullopt;
}

}  // namespace

std::optional<Sign> KnowledgeContext::stable_sign(const std::string& var) const {
  const Entry* e = entry(var);
  if (!e || !value_dependent()) return std::nullopt;
  if (e->known.sign) return e->known.sign;
  auto r = sign_of_value(reported(var));
  auto i = sign_of_value(intended(var));
  if (r && i && *r == *i) return r;
  return std::nullopt;
}

std::optional<Sign> KnowledgeContext::reported_sign(const std::string& var) const {
  if (auto s = sign_of_value(reported(var))) return s;
  return stable_sign(var);
}

std::optional<Sign> KnowledgeContext::intended_sign(const std::string& var) const {
  if (auto s = sign_of_value(intended(var))) return s;
  return stable_sign(var);
}

Expr simplify(const Expr& e, const KnowledgeContext& ctx) {
  return simplify(e, [&](const std::string& v) { return ctx.is_certain(v); });
}

}  // namespace fmr
