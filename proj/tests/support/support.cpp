#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace support {

using fmr::FailureMode;

ModelBuilder& ModelBuilder::boolean(const std::string& name, VarClass cls, fmr::Knowledge known) {
  model_.variables.push_back({name, ValueType::Boolean, cls, std::move(known)});
  return *this;
}

ModelBuilder& ModelBuilder::real(const std::string& name, VarClass cls, fmr::Knowledge known) {
  model_.variables.push_back({name, ValueType::Real, cls, std::move(known)});
  return *this;
}

ModelBuilder& ModelBuilder::component(const std::string& name, Kind kind,
                                      std::vector<std::string> inputs,
                                      std::vector<std::string> params, const std::string& output,
                                      Attrs attrs) {
  model_.components.push_back(
      {name, kind, std::move(inputs), std::move(params), {output}, std::move(attrs)});
  return *this;
}

ModelBuilder& ModelBuilder::output(const std::string& name) {
  model_.outputs.push_back(name);
  return *this;
}

SystemModel ModelBuilder::build() const {
  auto diagnostics = fmr::validate(model_);
  if (!diagnostics.empty()) throw fmr::ModelError(diagnostics);
  return model_;
}

SystemModel single(Kind kind, std::size_t arity, Attrs attrs) {
  ModelBuilder b;
  std::vector<std::string> args;
  ValueType in = fmr::argument_type(kind);
  for (std::size_t i = 1; i <= arity; ++i) {
    std::string x = "x" + std::to_string(i);
    if (in == ValueType::Boolean) b.boolean(x);
    else b.real(x);
    args.push_back(x);
  }
  if (fmr::output_type(kind) == ValueType::Boolean) b.boolean("y");
  else b.real("y");
  b.component("f", kind, args, {}, "y", std::move(attrs)).output("y");
  return b.build();
}

// ---------------------------------------------------------------------------

double ref_value(const SystemModel& m, const std::string& var, const World& w) {
  const ComponentDecl* c = m.producer_of(var);
  if (!c) return w.at(var);
  std::vector<double> x;
  for (const auto& a : c->args()) x.push_back(ref_value(m, a, w));
  auto b = [&](std::size_t i) { return x[i] != 0.0; };
  switch (c->kind) {
    case Kind::And: return std::all_of(x.begin(), x.end(), [](double v) { return v != 0.0; });
    case Kind::Or: return std::any_of(x.begin(), x.end(), [](double v) { return v != 0.0; });
    case Kind::Not: return !b(0);
    case Kind::KooN: {
      long count = std::count_if(x.begin(), x.end(), [](double v) { return v != 0.0; });
      return count >= *c->attrs.k;
    }
    case Kind::DNF: {
      int L = *c->attrs.L, K = *c->attrs.K;
      for (int l = 0; l < L; ++l) {
        bool row = true;
        for (int k = 0; k < K; ++k) row = row && b(l * K + k);
        if (row) return 1;
      }
      return 0;
    }
    case Kind::CNF: {
      int L = *c->attrs.L, K = *c->attrs.K;
      for (int l = 0; l < L; ++l) {
        bool row = false;
        for (int k = 0; k < K; ++k) row = row || b(l * K + k);
        if (!row) return 0;
      }
      return 1;
    }
    case Kind::Add: {
      double s = 0;
      for (double v : x) s += v;
      return s;
    }
    case Kind::Avg: {
      double s = 0;
      for (double v : x) s += v;
      return s / x.size();
    }
    case Kind::Sub: return x[0] - x[1];
    case Kind::Mul: return x[0] * x[1];
    case Kind::Abs: return std::abs(x[0]);
    case Kind::Inv:
      if (x[0] == 0) throw std::domain_error("1/0");
      return 1 / x[0];
    case Kind::Lim:
      if (x[1] > x[2]) throw std::domain_error("crossed bounds");
      return x[0] < x[1] ? x[1] : (x[0] > x[2] ? x[2] : x[0]);
    case Kind::Gcom: return x[0] > x[1];
    case Kind::Lcom: return x[0] < x[1];
    case Kind::Monotone: {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        s += ((*c->attrs.gradient)[i] == fmr::Sign::Negative ? -x[i] : x[i]);
      return s;
    }
  }
  throw std::logic_error("unhandled kind");
}

FailureMode ref_mode(const SystemModel& m, const std::string& var, const World& rep,
                     const World& itd) {
  double r = ref_value(m, var, rep);
  double i = ref_value(m, var, itd);
  bool boolean = m.find_variable(var)->type == ValueType::Boolean;
  if (r == i) return FailureMode::Match;
  if (boolean) return r > i ? FailureMode::Commission : FailureMode::Omission;
  return r > i ? FailureMode::High : FailureMode::Low;
}

void for_each_boolean_assignment(const SystemModel& m,
                                 const std::function<void(const World&, const World&)>& fn) {
  auto boundary = m.boundary_variables();
  std::vector<int> digit(boundary.size(), 0);
  World rep, itd;
  while (true) {
    bool skip = false;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      rep[boundary[i]] = digit[i] >> 1;
      itd[boundary[i]] = digit[i] & 1;
      if (m.find_variable(boundary[i])->cls == VarClass::Certain && (digit[i] >> 1) != (digit[i] & 1))
        skip = true;
    }
    if (!skip) fn(rep, itd);
    std::size_t i = 0;
    for (; i < digit.size(); ++i) {
      if (++digit[i] < 4) break;
      digit[i] = 0;
    }
    if (i == digit.size()) return;
  }
}

void for_each_assignment(const SystemModel& m, const std::vector<double>& reals,
                         const std::function<void(const World&, const World&)>& fn) {
  auto boundary = m.boundary_variables();
  std::vector<std::vector<std::pair<double, double>>> choices;
  for (const auto& name : boundary) {
    const fmr::VariableDecl* d = m.find_variable(name);
    std::vector<double> values;
    if (d->type == ValueType::Boolean) {
      values = {0, 1};
    } else {
      for (double v : reals) {
        if (d->known.sign && fmr::sign_of(v) != *d->known.sign) continue;
        values.push_back(v);
      }
    }
    std::vector<std::pair<double, double>> pairs;
    for (double r : values)
      for (double i : values)
        if (d->cls != VarClass::Certain || r == i) pairs.emplace_back(r, i);
    choices.push_back(std::move(pairs));
  }
  World rep, itd;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == boundary.size()) {
      fn(rep, itd);
      return;
    }
    for (auto [r, i] : choices[k]) {
      rep[boundary[k]] = r;
      itd[boundary[k]] = i;
      rec(k + 1);
    }
  };
  rec(0);
}

std::optional<std::map<std::string, FailureMode>> ref_modes(
    const SystemModel& m, const std::vector<std::string>& vars, const World& rep,
    const World& itd) {
  std::map<std::string, FailureMode> out;
  try {
    for (const auto& v : vars) out[v] = ref_mode(m, v, rep, itd);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  return out;
}

// ---------------------------------------------------------------------------

void for_each_mode_assignment(
    const std::vector<VarSpec>& vars,
    const std::function<void(const std::map<std::string, FailureMode>&)>& fn) {
  std::map<std::string, FailureMode> a;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      fn(a);
      return;
    }
    if (vars[i].certain) {
      a[vars[i].name] = FailureMode::Match;
      rec(i + 1);
      return;
    }
    for (FailureMode mode : fmr::family(vars[i].type)) {
      a[vars[i].name] = mode;
      rec(i + 1);
    }
  };
  rec(0);
}

fmr::Expr random_expr(std::mt19937_64& rng, const std::vector<VarSpec>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  int roll = pick(rng);
  if (depth <= 0 || roll < 3) {
    if (roll == 0 && depth > 0) return pick(rng) < 5 ? fmr::Expr::top() : fmr::Expr::bottom();
    const VarSpec& v = vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
    auto fam = fmr::family(v.type);
    return fmr::Expr::lit(v.name, fam[std::uniform_int_distribution<int>(0, 2)(rng)]);
  }
  int n = std::uniform_int_distribution<int>(2, 3)(rng);
  std::vector<fmr::Expr> kids;
  for (int i = 0; i < n; ++i) kids.push_back(random_expr(rng, vars, depth - 1));
  return roll < 7 ? fmr::Expr::conj(kids) : fmr::Expr::disj(kids);
}

// ---------------------------------------------------------------------------

namespace {

struct Shape {
  Kind kind;
  std::size_t arity;
  Attrs attrs;
};

Shape random_shape(std::mt19937_64& rng) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  switch (uni(0, 5)) {
    case 0: return {Kind::And, static_cast<std::size_t>(uni(2, 3)), {}};
    case 1: return {Kind::Or, static_cast<std::size_t>(uni(2, 3)), {}};
    case 2: return {Kind::Not, 1, {}};
    case 3: {
      int n = uni(2, 3);
      Attrs a;
      a.n = n;
      a.k = uni(1, n);
      return {Kind::KooN, static_cast<std::size_t>(n), a};
    }
    default: {
      Attrs a;
      a.L = uni(1, 2);
      a.K = uni(1, 2);
      return {uni(0, 1) ? Kind::DNF : Kind::CNF, static_cast<std::size_t>(*a.L * *a.K), a};
    }
  }
}

}  // namespace

SystemModel random_tree_model(std::mt19937_64& rng, int max_components, int max_boundary) {
  while (true) {
    int count = std::uniform_int_distribution<int>(1, max_components)(rng);
    std::vector<Shape> shapes;
    std::vector<std::vector<std::string>> args;
    // Open argument slots as (component, position).
    std::vector<std::pair<std::size_t, std::size_t>> open;
    for (int i = 0; i < count; ++i) {
      shapes.push_back(random_shape(rng));
      args.emplace_back(shapes.back().arity);
      std::string wire = i == 0 ? "y" : "w" + std::to_string(i);
      if (i > 0) {
        std::size_t slot = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
        auto [c, p] = open[slot];
        args[c][p] = wire;
        open.erase(open.begin() + slot);
      }
      for (std::size_t p = 0; p < shapes.back().arity; ++p)
        open.push_back({static_cast<std::size_t>(i), p});
    }
    if (open.size() > static_cast<std::size_t>(max_boundary)) continue;
    ModelBuilder b;
    int next = 1;
    for (auto [c, p] : open) {
      std::string x = "x" + std::to_string(next++);
      args[c][p] = x;
      b.boolean(x);
    }
    for (int i = 0; i < count; ++i) {
      std::string wire = i == 0 ? "y" : "w" + std::to_string(i);
      b.boolean(wire);
      b.component("c" + std::to_string(i), shapes[i].kind, args[i], {}, wire, shapes[i].attrs);
    }
    return b.output("y").build();
  }
}

SystemModel random_loop_model(std::mt19937_64& rng, std::string& loop_var) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int k = uni(1, 3);
  ModelBuilder b;
  int next = 1;
  auto fresh = [&] {
    std::string x = "x" + std::to_string(next++);
    b.boolean(x);
    return x;
  };
  // Cycle c1 -> c2 -> ... -> ck -> c1 over wires a1..ak.
  for (int i = 1; i <= k; ++i) b.boolean("a" + std::to_string(i));
  for (int i = 1; i <= k; ++i) {
    std::string in = "a" + std::to_string(i == 1 ? k : i - 1);
    std::string out = "a" + std::to_string(i);
    int kind = uni(0, 2);
    if (kind == 2 && k > 1) {
      b.component("c" + std::to_string(i), Kind::Not, {in}, {}, out);
    } else {
      std::vector<std::string> inputs{in, fresh()};
      if (uni(0, 1)) std::swap(inputs[0], inputs[1]);
      b.component("c" + std::to_string(i), kind == 0 ? Kind::And : Kind::Or, inputs, {}, out);
    }
  }
  // The output taps the cycle at a random wire.
  b.boolean("y");
  std::string tap = "a" + std::to_string(uni(1, k));
  switch (uni(0, 2)) {
    case 0: b.component("d", Kind::Not, {tap}, {}, "y"); break;
    case 1: b.component("d", Kind::And, {tap, fresh()}, {}, "y"); break;
    default: b.component("d", Kind::Or, {fresh(), tap}, {}, "y"); break;
  }
  SystemModel m = b.output("y").build();
  auto loops = fmr::detect_loops(m);
  loop_var = loops.empty() ? "" : loops.front().variable;
  return m;
}

std::vector<SystemModel> enumerate_small_models(int max_components, int max_boundary) {
  struct Comp {
    Kind kind;
    std::vector<int> args;  // >= 0 boundary index, < 0 component -(j+1)
  };
  std::vector<SystemModel> out;
  std::vector<Comp> comps;

  auto emit = [&](int boundary) {
    std::size_t n = comps.size();
    std::vector<bool> used(n, false);
    for (const Comp& c : comps)
      for (int a : c.args)
        if (a < 0) used[static_cast<std::size_t>(-a - 1)] = true;
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (!used[j]) return;
    auto wire = [&](std::size_t j) { return j + 1 == n ? std::string("y") : "w" + std::to_string(j + 1); };
    ModelBuilder b;
    for (int i = 1; i <= boundary; ++i) b.boolean("x" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      b.boolean(wire(j));
      std::vector<std::string> args;
      for (int a : comps[j].args)
        args.push_back(a >= 0 ? "x" + std::to_string(a + 1) : wire(static_cast<std::size_t>(-a - 1)));
      b.component("c" + std::to_string(j + 1), comps[j].kind, args, {}, wire(j));
    }
    out.push_back(b.output("y").build());
  };

  std::function<void(int)> grow = [&](int boundary) {
    if (static_cast<int>(comps.size()) == max_components) return;
    for (Kind kind : {Kind::And, Kind::Or, Kind::Not}) {
      std::size_t arity = kind == Kind::Not ? 1 : 2;
      Comp c{kind, {}};
      std::function<void(std::size_t, int)> fill = [&](std::size_t slot, int b) {
        if (slot == arity) {
          comps.push_back(c);
          emit(b);
          grow(b);
          comps.pop_back();
          return;
        }
        // Existing boundary inputs, the next fresh one, earlier outputs.
        for (int x = 0; x <= b && x < max_boundary; ++x) {
          c.args.push_back(x);
          fill(slot + 1, std::max(b, x + 1));
          c.args.pop_back();
        }
        for (std::size_t j = 0; j < comps.size(); ++j) {
          c.args.push_back(-static_cast<int>(j) - 1);
          fill(slot + 1, b);
          c.args.pop_back();
        }
      };
      fill(0, boundary);
    }
  };
  grow(0);
  return out;
}

}  // namespace support
