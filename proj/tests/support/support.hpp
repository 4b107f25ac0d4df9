#pragma once

// Test-side helpers: a terse model builder, a reference simulator written
// independently of the library's oracle, expression enumeration, and the
// random model generators shared by the property suites.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fmr/expr.hpp"
#include "fmr/model.hpp"

namespace support {

using fmr::Attrs;
using fmr::ComponentDecl;
using fmr::Kind;
using fmr::SystemModel;
using fmr::ValueType;
using fmr::VarClass;

class ModelBuilder {
 public:
  ModelBuilder& boolean(const std::string& name, VarClass cls = VarClass::Suspicious,
                        fmr::Knowledge known = {});
  ModelBuilder& real(const std::string& name, VarClass cls = VarClass::Suspicious,
                     fmr::Knowledge known = {});
  ModelBuilder& component(const std::string& name, Kind kind, std::vector<std::string> inputs,
                          std::vector<std::string> params, const std::string& output,
                          Attrs attrs = {});
  ModelBuilder& output(const std::string& name);
  /// Fails the calling test (via exception) if the model does not validate.
  SystemModel build() const;
  SystemModel build_unchecked() const { return model_; }

 private:
  SystemModel model_;
};

/// A single component y = kind(x1..xn) with all variables suspicious.
SystemModel single(Kind kind, std::size_t arity, Attrs attrs = {});

// --- reference simulation -------------------------------------------------

/// Boundary values in one world; Booleans as 0/1.
using World = std::map<std::string, double>;

/// Evaluates `var` by recursing through producers. Throws std::domain_error
/// for Inv(0) and crossed limiter bounds.
double ref_value(const SystemModel& m, const std::string& var, const World& w);

/// Failure mode of `var` under a (reported, intended) pair of worlds.
fmr::FailureMode ref_mode(const SystemModel& m, const std::string& var, const World& rep,
                          const World& itd);

/// Calls `fn(rep, itd)` for every Boolean boundary assignment (4 per
/// variable). Certain variables only take fault-free pairs.
void for_each_boolean_assignment(const SystemModel& m,
                                 const std::function<void(const World&, const World&)>& fn);

/// Like for_each_boolean_assignment, but real boundary variables range
/// over every (reported, intended) pair drawn from `reals`. Certain
/// variables take equal values, and a declared stable sign restricts
/// both values to that sign.
void for_each_assignment(const SystemModel& m, const std::vector<double>& reals,
                         const std::function<void(const World&, const World&)>& fn);

/// Modes of every variable in `vars`, or nothing when a world hits a
/// domain error.
std::optional<std::map<std::string, fmr::FailureMode>> ref_modes(
    const SystemModel& m, const std::vector<std::string>& vars, const World& rep,
    const World& itd);

// --- expression enumeration -----------------------------------------------

struct VarSpec {
  std::string name;
  ValueType type;
  bool certain = false;
};

/// Calls `fn` with every consistent mode assignment: one family mode per
/// variable, certain variables fixed to m.
void for_each_mode_assignment(const std::vector<VarSpec>& vars,
                              const std::function<void(const std::map<std::string, fmr::FailureMode>&)>& fn);

/// Random expression over `vars` with literals from each variable's family.
fmr::Expr random_expr(std::mt19937_64& rng, const std::vector<VarSpec>& vars, int depth);

// --- random models --------------------------------------------------------

/// Fan-out-free Boolean model with 1..max_components components drawn from
/// And, Or, Not, KooN, DNF and CNF and at most max_boundary suspicious
/// boundary inputs. Output is "y".
SystemModel random_tree_model(std::mt19937_64& rng, int max_components, int max_boundary);

/// Boolean model whose components form exactly one cycle. The output is
/// "y"; `loop_var` receives the wire that closes the cycle.
SystemModel random_loop_model(std::mt19937_64& rng, std::string& loop_var);

/// Every connected model of up to `max_components` components from
/// {And(2), Or(2), Not} over at most `max_boundary` boundary inputs, up to
/// renaming of boundary variables. The last component drives "y".
std::vector<SystemModel> enumerate_small_models(int max_components, int max_boundary);

}  // namespace support
