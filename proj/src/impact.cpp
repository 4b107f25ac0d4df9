#include "fmr/impact.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fmr/error.hpp"

namespace fmr {

namespace {

int rank(FailureMode m) {
  switch (m) {
    case FailureMode::High:
    case FailureMode::Commission: return 1;
    case FailureMode::Low:
    case FailureMode::Omission: return -1;
    case FailureMode::Match: return 0;
  }
  return 0;
}

bool same_family(FailureMode x, FailureMode z) {
  if (x == FailureMode::Match || z == FailureMode::Match) return true;
  return compatible(x, ValueType::Real) == compatible(z, ValueType::Real);
}

}  // namespace

double cmp(FailureMode x, FailureMode z) {
  if (!same_family(x, z)) {
    throw TypeError("cannot compare failure modes " + to_string(x) + " and " +
                    to_string(z) + " from different families");
  }
  // Positions h/t=1, m=0, l/f=-1 give the full table as half the gap.
  return (rank(x) - rank(z)) / 2.0;
}

ImpactResult impact(const SystemModel& model, const ImpactQuery& query,
                    const FaultAssignment& baseline) {
  const VariableDecl* decl = model.find_variable(query.variable);
  if (!decl) throw Error("impact", "unknown variable '" + query.variable + "'");
  if (!model.is_boundary(query.variable)) {
    throw Error("impact", "'" + query.variable + "' is produced by a component; "
                          "only inputs and parameters can be changed");
  }
  if (type_of(query.from) != decl->type || type_of(query.to) != decl->type) {
    throw TypeError("proposed values for '" + query.variable + "' must be " +
                    to_string(decl->type));
  }
  auto base = baseline.find(query.variable);
  if (base == baseline.end()) {
    throw Error("impact", "baseline has no value for '" + query.variable + "'");
  }

  FaultAssignment a = baseline;
  a[query.variable].reported = query.from;
  auto before = simulate(model, a);
  a[query.variable].reported = query.to;
  auto after = simulate(model, a);

  ImpactResult result;
  const auto& outputs = query.outputs.empty() ? model.outputs : query.outputs;
  for (const auto& o : outputs) {
    if (std::find(model.outputs.begin(), model.outputs.end(), o) == model.outputs.end()) {
      throw Error("impact", "'" + o + "' is not a system output");
    }
    OutputImpact oi{o, before.at(o), after.at(o), 0};
    oi.score = std::fabs(cmp(oi.before, oi.after));
    result.total += oi.score;
    result.outputs.push_back(oi);
  }
  return result;
}

FaultAssignment baseline_assignment(const SystemModel& model) {
  FaultAssignment a;
  for (const auto& name : model.boundary_variables()) {
    const VariableDecl& v = *model.find_variable(name);
    auto rep = v.known.reported;
    auto itd = v.known.intended;
    if (v.cls == VarClass::Certain) {
      if (!rep) rep = itd;
      if (!itd) itd = rep;
    }
    if (!rep || !itd) {
      throw Error("impact", "baseline needs known reported and intended values for '" +
                                name + "'");
    }
    a[name] = {*rep, *itd};
  }
  return a;
}

Value parse_value(std::string_view text, ValueType type) {
  if (type == ValueType::Boolean) {
    if (text == "T" || text == "true") return Value{true};
    if (text == "F" || text == "false") return Value{false};
    throw TypeError("expected a Boolean value (T/F), got '" + std::string(text) + "'");
  }
  double d = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw TypeError("expected a number, got '" + std::string(text) + "'");
  }
  return Value{d};
}

}  // namespace fmr
