#pragma once

/// @file model.hpp
/// Dataflow system models: typed variables, component instances and the
/// JSON model-file format.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmr/error.hpp"
#include "fmr/failure_mode.hpp"

namespace fmr {

enum class VarClass { Certain, Suspicious };

std::string to_string(VarClass c);

/// Prior knowledge attached to a variable. `sign` is a sign that holds in
/// both the reported and the intended world (a sign-stability assertion).
struct Knowledge {
  std::optional<Sign> sign;
  std::optional<Value> reported;
  std::optional<Value> intended;

  bool empty() const noexcept { return !sign && !reported && !intended; }
  bool operator==(const Knowledge&) const = default;
};

struct VariableDecl {
  std::string name;
  ValueType type = ValueType::Real;
  VarClass cls = VarClass::Suspicious;
  Knowledge known;

  bool operator==(const VariableDecl&) const = default;
};

enum class Kind {
  And, Or, Not, Add, Sub, Avg, Lim, Inv, Abs, Mul, Gcom, Lcom, DNF, CNF, KooN,
  Monotone,
};

std::string to_string(Kind kind);
std::optional<Kind> kind_from_string(std::string_view text) noexcept;

/// Kind-specific attributes. Which fields must be present depends on the
/// kind: KooN needs k and n, DNF/CNF need L and K, Monotone needs one
/// gradient sign per argument. Everything else takes none.
struct Attrs {
  std::optional<int> k, n, L, K;
  std::optional<std::vector<Sign>> gradient;

  bool empty() const noexcept { return !k && !n && !L && !K && !gradient; }
  bool operator==(const Attrs&) const = default;
};

struct ComponentDecl {
  std::string name;
  Kind kind = Kind::And;
  std::vector<std::string> inputs;
  std::vector<std::string> params;
  std::vector<std::string> outputs;
  Attrs attrs;

  /// Inputs followed by params, the positional argument list of the
  /// component's function.
  std::vector<std::string> args() const;
  const std::string& output() const { return outputs.front(); }

  bool operator==(const ComponentDecl&) const = default;
};

struct SystemModel {
  std::vector<VariableDecl> variables;
  std::vector<ComponentDecl> components;
  std::vector<std::string> outputs;

  const VariableDecl* find_variable(std::string_view name) const;
  const ComponentDecl* find_component(std::string_view name) const;
  /// The component whose outputs include `var`, or nullptr for boundary
  /// variables (external inputs and parameters).
  const ComponentDecl* producer_of(std::string_view var) const;
  bool is_boundary(std::string_view var) const { return !producer_of(var); }
  /// Boundary variables in declaration order.
  std::vector<std::string> boundary_variables() const;

  bool operator==(const SystemModel&) const = default;
};

/// Input type expected by every argument of `kind`.
ValueType argument_type(Kind kind) noexcept;
ValueType output_type(Kind kind) noexcept;

/// Parses a model file without semantic checks. Syntax errors carry a
/// line:column position; schema violations (missing fields, wrong JSON
/// types, unknown kinds, malformed identifiers) are collected. Throws
/// ModelError when any is found.
SystemModel parse_model_unchecked(std::string_view text);

/// One diagnostic per invariant violation; empty iff the model is valid.
std::vector<Diagnostic> validate(const SystemModel& model);

/// parse_model_unchecked followed by validate; throws ModelError listing
/// every diagnostic when the model is invalid.
SystemModel parse_model(std::string_view text);

/// Reads and parses a model file from disk.
SystemModel load_model(const std::string& path);

/// Emits the model-file JSON; parse_model(serialize(m)) == m.
std::string serialize(const SystemModel& model);

/// A wire that closes a cycle: `variable`, produced by `producer`, feeds
/// back into `consumer`.
struct FeedbackEdge {
  std::string variable;
  std::string producer;
  std::string consumer;

  auto operator<=>(const FeedbackEdge&) const = default;
};

/// An inclusion-minimal set of edges whose removal leaves the component
/// graph acyclic. Inside each strongly connected component the edges
/// entering the lexicographically least component are cut first.
std::vector<FeedbackEdge> detect_loops(const SystemModel& model);

/// Components in an order where every producer precedes its consumers,
/// ignoring the given feedback edges. Throws Error("system-model") when a
/// cycle remains.
std::vector<const ComponentDecl*> topological_order(
    const SystemModel& model, const std::vector<FeedbackEdge>& ignored = {});

}  // namespace fmr
