#include "fmr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "fmr/engine.hpp"
#include "fmr/error.hpp"

namespace fmr {

std::string to_string(const FaultAssignment& a) {
  std::string out;
  for (const auto& [var, pair] : a) {
    if (!out.empty()) out += ", ";
    out += var + "=(" + to_string(pair.reported) + "," + to_string(pair.intended) + ")";
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "proved";
    case Verdict::Unrefuted: return "unrefuted";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Values are held as doubles in both worlds; Booleans as 0 and 1.
class Compiled {
 public:
  explicit Compiled(const SystemModel& model) {
    for (const auto& v : model.variables) {
      index_[v.name] = types_.size();
      names_.push_back(v.name);
      types_.push_back(v.type);
      certain_.push_back(v.cls == VarClass::Certain);
      known_.push_back(v.known);
    }
    std::vector<const ComponentDecl*> order;
    try {
      order = topological_order(model);
    } catch (const Error&) {
      throw SimulationError("model contains a loop; simulation needs a loop-free model");
    }
    std::vector<bool> produced(types_.size(), false);
    for (const ComponentDecl* c : order) {
      Op op{c->kind, {}, at(c->output()), c->attrs};
      for (const auto& a : c->args()) op.args.push_back(at(a));
      produced[op.out] = true;
      ops_.push_back(std::move(op));
    }
    for (std::size_t i = 0; i < types_.size(); ++i)
      if (!produced[i]) boundary_.push_back(i);
  }

  std::size_t at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw SimulationError("unknown variable '" + name + "'");
    return it->second;
  }

  const std::vector<std::size_t>& boundary() const { return boundary_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  ValueType type(std::size_t i) const { return types_[i]; }
  bool certain(std::size_t i) const { return certain_[i]; }
  const Knowledge& known(std::size_t i) const { return known_[i]; }
  std::size_t size() const { return types_.size(); }

  // Fills every produced wire in both worlds.
  void run(std::vector<double>& rep, std::vector<double>& itd) const {
    for (const Op& op : ops_) {
      rep[op.out] = eval(op, rep);
      itd[op.out] = eval(op, itd);
      if (op.kind == Kind::Inv && (rep[op.args[0]] < 0) != (itd[op.args[0]] < 0)) {
        throw DomainError("Inv input changes sign between the worlds");
      }
    }
  }

  FailureMode mode(std::size_t i, double r, double d) const {
    if (r == d) return FailureMode::Match;
    if (types_[i] == ValueType::Boolean)
      return r > d ? FailureMode::Commission : FailureMode::Omission;
    return r > d ? FailureMode::High : FailureMode::Low;
  }

 private:
  struct Op {
    Kind kind;
    std::vector<std::size_t> args;
    std::size_t out;
    Attrs attrs;
  };

  static double eval(const Op& op, const std::vector<double>& v) {
    auto arg = [&](std::size_t i) { return v[op.args[i]]; };
    auto truth = [&](std::size_t i) { return v[op.args[i]] != 0.0; };
    std::size_t n = op.args.size();
    switch (op.kind) {
      case Kind::And: {
        for (std::size_t i = 0; i < n; ++i)
          if (!truth(i)) return 0.0;
        return 1.0;
      }
      case Kind::Or: {
        for (std::size_t i = 0; i < n; ++i)
          if (truth(i)) return 1.0;
        return 0.0;
      }
      case Kind::Not: return truth(0) ? 0.0 : 1.0;
      case Kind::DNF:
      case Kind::CNF: {
        int L = *op.attrs.L;
        int K = *op.attrs.K;
        bool dnf = op.kind == Kind::DNF;
        for (int l = 0; l < L; ++l) {
          bool row = dnf;
          for (int k = 0; k < K; ++k) {
            bool x = truth(static_cast<std::size_t>(l * K + k));
            row = dnf ? (row && x) : (row || x);
          }
          if (dnf && row) return 1.0;
          if (!dnf && !row) return 0.0;
        }
        return dnf ? 0.0 : 1.0;
      }
      case Kind::KooN: {
        int count = 0;
        for (std::size_t i = 0; i < n; ++i) count += truth(i) ? 1 : 0;
        return count >= *op.attrs.k ? 1.0 : 0.0;
      }
      case Kind::Add:
      case Kind::Avg: {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += arg(i);
        return op.kind == Kind::Add ? s : s / static_cast<double>(n);
      }
      case Kind::Sub: return arg(0) - arg(1);
      case Kind::Mul: return arg(0) * arg(1);
      case Kind::Abs: return std::fabs(arg(0));
      case Kind::Inv:
        if (arg(0) == 0.0) throw DomainError("Inv of zero");
        return 1.0 / arg(0);
      case Kind::Lim:
        if (arg(1) > arg(2)) throw DomainError("Lim with lower bound above upper bound");
        return std::min(std::max(arg(0), arg(1)), arg(2));
      case Kind::Gcom: return arg(0) > arg(1) ? 1.0 : 0.0;
      case Kind::Lcom: return arg(0) < arg(1) ? 1.0 : 0.0;
      case Kind::Monotone: {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
          s += ((*op.attrs.gradient)[i] == Sign::Negative ? -1.0 : 1.0) * arg(i);
        return s;
      }
    }
    return 0.0;
  }

  std::map<std::string, std::size_t> index_;
  std::vector<std::string> names_;
  std::vector<ValueType> types_;
  std::vector<bool> certain_;
  std::vector<Knowledge> known_;
  std::vector<Op> ops_;
  std::vector<std::size_t> boundary_;
};

double to_double(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  return std::get<double>(v);
}

Value to_value(ValueType t, double d) {
  if (t == ValueType::Boolean) return Value{d != 0.0};
  return Value{d};
}

}  // namespace

std::map<std::string, FailureMode> simulate(const SystemModel& model,
                                            const FaultAssignment& assignment) {
  Compiled sim(model);
  std::vector<double> rep(sim.size(), 0.0), itd(sim.size(), 0.0);
  for (std::size_t b : sim.boundary()) {
    auto it = assignment.find(sim.name(b));
    if (it == assignment.end()) {
      throw SimulationError("no value for boundary variable '" + sim.name(b) + "'");
    }
    if (type_of(it->second.reported) != sim.type(b) ||
        type_of(it->second.intended) != sim.type(b)) {
      throw TypeError("values for '" + sim.name(b) + "' do not match its type");
    }
    rep[b] = to_double(it->second.reported);
    itd[b] = to_double(it->second.intended);
  }
  sim.run(rep, itd);
  std::map<std::string, FailureMode> out;
  for (std::size_t i = 0; i < sim.size(); ++i) out[sim.name(i)] = sim.mode(i, rep[i], itd[i]);
  return out;
}

RealGrid real_grid(std::uint64_t seed) {
  RealGrid g{{-2, -1, -0.5, 0, 0.5, 1, 2}, {0.25, 1, 3}};
  if (seed == 0) return g;
  std::mt19937_64 gen(seed);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  auto grid64 = [](double x) { return std::round(x * 64.0) / 64.0; };
  for (int added = 0; added < 4;) {
    double v = grid64(-3.0 + 6.0 * unit());
    if (v <= -3.0 || v >= 3.0) continue;
    if (std::find(g.intended.begin(), g.intended.end(), v) != g.intended.end()) continue;
    g.intended.push_back(v);
    ++added;
  }
  for (int added = 0; added < 2;) {
    double d = grid64(4.0 * unit());
    if (d <= 0.0 || d >= 4.0) continue;
    if (std::find(g.deviations.begin(), g.deviations.end(), d) != g.deviations.end()) continue;
    g.deviations.push_back(d);
    ++added;
  }
  std::sort(g.intended.begin(), g.intended.end());
  std::sort(g.deviations.begin(), g.deviations.end());
  return g;
}

namespace {

struct Pair {
  double reported;
  double intended;
};

std::vector<Pair> all_pairs(ValueType type, const RealGrid& grid) {
  if (type == ValueType::Boolean) return {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::vector<Pair> out;
  for (double v : grid.intended) {
    out.push_back({v, v});
    for (double d : grid.deviations) {
      out.push_back({v + d, v});
      out.push_back({v - d, v});
    }
  }
  return out;
}

bool agrees(const Knowledge& k, ValueType type, double rep, double itd) {
  if (k.reported && to_double(*k.reported) != rep) return false;
  if (k.intended && to_double(*k.intended) != itd) return false;
  if (k.sign && type == ValueType::Real &&
      (sign_of(rep) != *k.sign || sign_of(itd) != *k.sign))
    return false;
  return true;
}

// Enumerates the product of per-boundary-variable candidates, runs the
// simulation and hands every in-domain result to `visit`.
class Enumerator {
 public:
  Enumerator(const SystemModel& model, const OracleOptions& options)
      : model_(break_loops(model)), sim_(model_), options_(options),
        grid_(real_grid(options.seed)) {}

  const Compiled& sim() const { return sim_; }

  // `mode_filter(var index)` limits a boundary variable's modes.
  template <typename Filter, typename Visit>
  std::size_t run(Filter mode_filter, Visit visit) {
    const auto& boundary = sim_.boundary();
    std::vector<std::vector<Pair>> candidates;
    std::size_t total = 1;
    exhaustive_ = true;
    for (std::size_t b : boundary) {
      std::vector<Pair> keep;
      for (const Pair& p : all_pairs(sim_.type(b), grid_)) {
        FailureMode m = sim_.mode(b, p.reported, p.intended);
        if (sim_.certain(b) && m != FailureMode::Match) continue;
        if (!mode_filter(b, m)) continue;
        if (options_.honor_knowledge && !agrees(sim_.known(b), sim_.type(b), p.reported, p.intended))
          continue;
        keep.push_back(p);
      }
      if (sim_.type(b) == ValueType::Real) exhaustive_ = false;
      if (keep.empty()) return 0;
      total *= keep.size();
      if (total > options_.max_assignments) {
        throw SimulationError("enumeration exceeds " + std::to_string(options_.max_assignments) +
                              " assignments");
      }
      candidates.push_back(std::move(keep));
    }

    std::vector<double> rep(sim_.size(), 0.0), itd(sim_.size(), 0.0);
    std::vector<std::size_t> digit(boundary.size(), 0);
    std::size_t simulated = 0;
    while (true) {
      for (std::size_t i = 0; i < boundary.size(); ++i) {
        rep[boundary[i]] = candidates[i][digit[i]].reported;
        itd[boundary[i]] = candidates[i][digit[i]].intended;
      }
      bool in_domain = true;
      try {
        sim_.run(rep, itd);
      } catch (const DomainError&) {
        in_domain = false;
      }
      if (in_domain && consistent(rep, itd)) {
        ++simulated;
        if (!visit(rep, itd)) return simulated;
      }
      std::size_t i = 0;
      for (; i < digit.size(); ++i) {
        if (++digit[i] < candidates[i].size()) break;
        digit[i] = 0;
      }
      if (i == digit.size()) break;
    }
    return simulated;
  }

  bool exhaustive() const { return exhaustive_; }

  FaultAssignment assignment(const std::vector<double>& rep,
                             const std::vector<double>& itd) const {
    FaultAssignment a;
    for (std::size_t b : sim_.boundary()) {
      a[sim_.name(b)] = {to_value(sim_.type(b), rep[b]), to_value(sim_.type(b), itd[b])};
    }
    return a;
  }

 private:
  // Produced wires must respect certainty and, when asked, known values.
  bool consistent(const std::vector<double>& rep, const std::vector<double>& itd) const {
    for (std::size_t i = 0; i < sim_.size(); ++i) {
      if (sim_.certain(i) && rep[i] != itd[i]) return false;
      if (options_.honor_knowledge && !agrees(sim_.known(i), sim_.type(i), rep[i], itd[i]))
        return false;
    }
    return true;
  }

  SystemModel model_;
  Compiled sim_;
  OracleOptions options_;
  RealGrid grid_;
  bool exhaustive_ = true;
};

}  // namespace

VerifyResult verify_certain_cause(const SystemModel& model, const Term& term,
                                  const Literal& target, const OracleOptions& options) {
  Enumerator en(model, options);
  const Compiled& sim = en.sim();
  std::map<std::size_t, FailureMode> required;
  for (const Literal& lit : term) {
    std::size_t i = sim.at(lit.variable);
    const auto& b = sim.boundary();
    if (std::find(b.begin(), b.end(), i) == b.end()) {
      throw Error("oracle", "cause literal " + to_string(lit) + " is not on a boundary variable");
    }
    auto [it, fresh] = required.emplace(i, lit.mode);
    if (!fresh && it->second != lit.mode) return {Verdict::Inconclusive, 0, 0, std::nullopt};
  }
  std::size_t y = sim.at(target.variable);

  VerifyResult result;
  result.checked = en.run(
      [&](std::size_t b, FailureMode m) {
        auto it = required.find(b);
        return m == (it == required.end() ? FailureMode::Match : it->second);
      },
      [&](const std::vector<double>& rep, const std::vector<double>& itd) {
        // The effect is only possible when the intended output allows it.
        if (target.mode == FailureMode::Commission && itd[y] != 0.0) return true;
        if (target.mode == FailureMode::Omission && itd[y] == 0.0) return true;
        ++result.witnesses;
        if (sim.mode(y, rep[y], itd[y]) != target.mode) {
          result.counterexample = en.assignment(rep, itd);
          return false;
        }
        return true;
      });
  if (result.counterexample) result.verdict = Verdict::Refuted;
  else if (result.witnesses == 0) result.verdict = Verdict::Inconclusive;
  else result.verdict = en.exhaustive() ? Verdict::Proved : Verdict::Unrefuted;
  return result;
}

VerifyResult verify_minimum_conditions(const SystemModel& model, const Expr& expr,
                                       const Literal& target, const OracleOptions& options) {
  Enumerator en(model, options);
  const Compiled& sim = en.sim();
  std::size_t y = sim.at(target.variable);
  std::map<std::string, std::size_t> positions;
  for (std::size_t b : sim.boundary()) positions[sim.name(b)] = b;

  VerifyResult result;
  result.checked = en.run([](std::size_t, FailureMode) { return true; },
                          [&](const std::vector<double>& rep, const std::vector<double>& itd) {
                            if (sim.mode(y, rep[y], itd[y]) != target.mode) return true;
                            ++result.witnesses;
                            bool holds = eval(expr, [&](const std::string& v) {
                              auto it = positions.find(v);
                              if (it == positions.end()) return FailureMode::Match;
                              return sim.mode(it->second, rep[it->second], itd[it->second]);
                            });
                            if (!holds) {
                              result.counterexample = en.assignment(rep, itd);
                              return false;
                            }
                            return true;
                          });
  if (result.counterexample) result.verdict = Verdict::Refuted;
  else if (result.checked == 0) result.verdict = Verdict::Inconclusive;
  else result.verdict = en.exhaustive() ? Verdict::Proved : Verdict::Unrefuted;
  return result;
}

TruthTable truth_table(Kind kind, std::size_t arity, const Attrs& attrs) {
  if (argument_type(kind) != ValueType::Boolean) {
    throw UnsupportedError("truth tables need a Boolean kind, got " + to_string(kind));
  }
  if (arity < 1 || arity > 4) {
    throw UnsupportedError("truth tables support 1 to 4 inputs, got " + std::to_string(arity));
  }
  SystemModel m;
  ComponentDecl c;
  c.name = "f";
  c.kind = kind;
  c.attrs = attrs;
  for (std::size_t i = 1; i <= arity; ++i) {
    std::string x = "x" + std::to_string(i);
    m.variables.push_back({x, ValueType::Boolean, VarClass::Suspicious, {}});
    c.inputs.push_back(x);
  }
  m.variables.push_back({"y", ValueType::Boolean, VarClass::Suspicious, {}});
  c.outputs = {"y"};
  m.components.push_back(c);
  m.outputs = {"y"};
  if (auto d = validate(m); !d.empty()) throw ModelError(std::move(d));

  Compiled sim(m);
  TruthTable t;
  t.header.push_back("No.");
  for (const auto& v : m.variables) {
    t.header.push_back(v.name + "~");
    t.header.push_back(v.name + "-");
    t.header.push_back(v.name + "^");
  }
  std::size_t rows = std::size_t{1} << (2 * arity);
  std::vector<double> rep(sim.size()), itd(sim.size());
  auto tf = [](double d) { return std::string(d != 0.0 ? "T" : "F"); };
  for (std::size_t r = 0; r < rows; ++r) {
    // The first input's reported value is the most significant bit.
    for (std::size_t i = 0; i < arity; ++i) {
      std::size_t shift = 2 * (arity - 1 - i);
      rep[i] = static_cast<double>((r >> (shift + 1)) & 1);
      itd[i] = static_cast<double>((r >> shift) & 1);
    }
    sim.run(rep, itd);
    std::vector<std::string> row{std::to_string(r + 1)};
    for (std::size_t i = 0; i < sim.size(); ++i) {
      row.push_back(tf(rep[i]));
      row.push_back(tf(itd[i]));
      row.push_back(to_string(sim.mode(i, rep[i], itd[i])));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string render(const TruthTable& table) {
  std::vector<std::size_t> width(table.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  };
  measure(table.header);
  for (const auto& row : table.rows) measure(row);

  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out;
}

}  // namespace fmr
