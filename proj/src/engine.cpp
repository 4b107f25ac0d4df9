#include "fmr/engine.hpp"

#include <map>
#include <set>

#include "fmr/error.hpp"

namespace fmr {

namespace {

const char* const kModule = "reasoning-engine";

}  // namespace

SystemModel break_loops(const SystemModel& model) {
  auto loops = detect_loops(model);
  if (loops.empty()) return model;
  SystemModel out = model;
  std::set<std::string> added;
  for (const FeedbackEdge& edge : loops) {
    std::string fresh = edge.variable + kPreviousSuffix;
    if (added.insert(fresh).second) {
      const VariableDecl* orig = model.find_variable(edge.variable);
      VariableDecl decl;
      decl.name = fresh;
      decl.type = orig ? orig->type : ValueType::Boolean;
      decl.cls = VarClass::Certain;
      out.variables.push_back(std::move(decl));
    }
    for (ComponentDecl& c : out.components) {
      if (c.name != edge.consumer) continue;
      for (auto* list : {&c.inputs, &c.params}) {
        for (std::string& a : *list)
          if (a == edge.variable) a = fresh;
      }
    }
  }
  return out;
}

namespace {

class Expander {
 public:
  Expander(const SystemModel& model, const KnowledgeContext& ctx, AnalysisResult& result)
      : model_(model), ctx_(ctx), result_(result) {}

  Expr expand(const std::string& var, FailureMode mode) {
    if (ctx_.is_certain(var)) return mode == FailureMode::Match ? Expr::top() : Expr::bottom();
    const ComponentDecl* producer = model_.producer_of(var);
    if (!producer) return Expr::lit(var, mode);

    auto key = std::make_pair(var, mode);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    FailureScenario scenario = local_model(*producer, mode, ctx_);
    result_.weakened = result_.weakened || scenario.weakened;
    Expr local = scenario.cause;
    result_.trace.push_back({producer->name, std::move(scenario)});
    Expr expanded = substitute(local, [&](const Literal& lit) -> std::optional<Expr> {
      return expand(lit.variable, lit.mode);
    });
    expanded = simplify(expanded, ctx_);
    memo_.emplace(key, expanded);
    return expanded;
  }

 private:
  const SystemModel& model_;
  const KnowledgeContext& ctx_;
  AnalysisResult& result_;
  std::map<std::pair<std::string, FailureMode>, Expr> memo_;
};

bool has_reconvergence(const SystemModel& model, const KnowledgeContext& ctx,
                       const std::string& target) {
  std::set<std::string> seen_components;
  std::map<std::string, int> uses;
  std::vector<std::string> stack{target};
  std::set<std::string> visited;
  while (!stack.empty()) {
    std::string v = stack.back();
    stack.pop_back();
    if (!visited.insert(v).second) continue;
    const ComponentDecl* p = model.producer_of(v);
    if (!p || !seen_components.insert(p->name).second) continue;
    for (const auto& a : p->args()) {
      ++uses[a];
      stack.push_back(a);
    }
  }
  // Certain wires are constants and cannot correlate branches.
  for (const auto& [var, count] : uses)
    if (count > 1 && !ctx.is_certain(var)) return true;
  return false;
}

}  // namespace

AnalysisResult backward_reason(const SystemModel& model, const Literal& target,
                               const Policy& policy, const EngineOptions& options) {
  bool is_output = false;
  for (const auto& o : model.outputs) is_output = is_output || o == target.variable;
  if (!is_output) {
    throw Error(kModule, "target '" + target.variable + "' is not a system output");
  }
  const VariableDecl* decl = model.find_variable(target.variable);
  if (decl && !compatible(target.mode, decl->type)) {
    throw TypeError("mode " + to_string(target.mode) + " does not apply to " +
                    to_string(decl->type) + " output '" + target.variable + "'");
  }

  AnalysisResult result;
  result.target = target;
  result.policy = policy;
  result.loops = detect_loops(model);
  SystemModel broken = result.loops.empty() ? model : break_loops(model);
  KnowledgeContext ctx(broken, policy);

  Expander expander(broken, ctx, result);
  Expr expansion = expander.expand(target.variable, target.mode);
  try {
    result.cause = simplify(to_dnf(simplify(expansion, ctx), options.dnf_cap), ctx);
  } catch (const BlowupError& e) {
    throw BlowupError(kModule, std::string("analysis of ") + to_string(target) + ": " + e.what());
  }
  result.reconvergent = policy.cause == CauseMode::CertainCauses &&
                        has_reconvergence(broken, ctx, target.variable);
  return result;
}

std::vector<Term> explain(const AnalysisResult& result) {
  return dnf_terms(result.cause);
}

std::string explain_note(const AnalysisResult& result) {
  if (result.cause.is_false()) return "no consistent cause";
  if (result.cause.is_true()) return "unconstrained: the effect needs no boundary fault";
  return "";
}

}  // namespace fmr
