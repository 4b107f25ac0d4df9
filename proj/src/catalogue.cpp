#include "fmr/catalogue.hpp"

#include <algorithm>

#include "fmr/error.hpp"

namespace fmr {

namespace {

using FM = FailureMode;
constexpr Sign kNeg = Sign::Negative;
constexpr Sign kZero = Sign::Zero;
constexpr Sign kPos = Sign::Positive;

constexpr MulTableRow kMulTable[] = {
    {FM::Low, kNeg, kNeg, "1h|2h|1l2l"},
    {FM::Low, kNeg, kZero, "2h|1l2l"},
    {FM::Low, kNeg, kPos, "1l|2h|10|20"},
    {FM::Low, kZero, kNeg, "1h|1l2l"},
    {FM::Low, kZero, kZero, "1h2h|1l2l"},
    {FM::Low, kZero, kPos, "1l|1h2h"},
    {FM::Low, kPos, kNeg, "1h|2l|10|20"},
    {FM::Low, kPos, kZero, "2l|1h2h"},
    {FM::Low, kPos, kPos, "1l|2l|1h2h"},
    {FM::High, kNeg, kNeg, "1l|2l|10|20"},
    {FM::High, kNeg, kZero, "2l|1l2h"},
    {FM::High, kNeg, kPos, "1h|2l|1l2h"},
    {FM::High, kZero, kNeg, "1l|1h2l"},
    {FM::High, kZero, kZero, "1h2l|1l2h"},
    {FM::High, kZero, kPos, "1h|1l2h"},
    {FM::High, kPos, kNeg, "1l|2h|1h2l"},
    {FM::High, kPos, kZero, "2h|1h2l"},
    {FM::High, kPos, kPos, "1h|2h|10|20"},
};

Expr same_mode_disjunction(const std::vector<std::string>& args, FailureMode mode) {
  std::vector<Expr> lits;
  for (const auto& a : args) lits.push_back(Expr::lit(a, mode));
  return Expr::disj(std::move(lits));
}

Expr same_mode_conjunction(const std::vector<std::string>& args, FailureMode mode) {
  std::vector<Expr> lits;
  for (const auto& a : args) lits.push_back(Expr::lit(a, mode));
  return Expr::conj(std::move(lits));
}

Expr any_deviation(const std::vector<std::string>& args) {
  std::vector<Expr> lits;
  for (const auto& a : args) {
    lits.push_back(Expr::lit(a, FM::High));
    lits.push_back(Expr::lit(a, FM::Low));
  }
  return Expr::disj(std::move(lits));
}

// All size-`r` subsets of `args`, each conjoined with `mode`, disjoined.
Expr subsets(const std::vector<std::string>& args, int r, FailureMode mode) {
  std::vector<Expr> terms;
  std::vector<bool> pick(args.size(), false);
  std::fill(pick.begin(), pick.begin() + r, true);
  do {
    std::vector<Expr> lits;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (pick[i]) lits.push_back(Expr::lit(args[i], mode));
    terms.push_back(Expr::conj(std::move(lits)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return Expr::disj(std::move(terms));
}

std::vector<std::vector<std::string>> rows_of(const std::vector<std::string>& args,
                                              int L, int K) {
  if (L < 1 || K < 1 || args.size() != static_cast<std::size_t>(L * K)) {
    throw UnsupportedError("structure needs L*K = " + std::to_string(L * K) +
                           " arguments, got " + std::to_string(args.size()));
  }
  std::vector<std::vector<std::string>> rows(L);
  for (int l = 0; l < L; ++l)
    rows[l].assign(args.begin() + l * K, args.begin() + (l + 1) * K);
  return rows;
}

void require_boolean(FailureMode effect, Kind kind) {
  if (effect != FM::Commission && effect != FM::Omission) {
    throw UnsupportedError(to_string(kind) + " has a Boolean output; mode " +
                           to_string(effect) + " does not apply");
  }
}

void require_real(FailureMode effect, Kind kind) {
  if (effect != FM::High && effect != FM::Low) {
    throw UnsupportedError(to_string(kind) + " has a real output; mode " +
                           to_string(effect) + " does not apply");
  }
}

class Builder {
 public:
  Builder(const ComponentDecl& c, FailureMode effect, const KnowledgeContext& ctx)
      : c_(c), effect_(effect), ctx_(ctx), args_(c.args()) {
    out_.kind = c.kind;
    out_.effect = Literal{c.output(), effect};
  }

  FailureScenario build() {
    out_.cause = simplify(cause(), ctx_);
    return std::move(out_);
  }

 private:
  bool certain_policy() const {
    return ctx_.policy().cause == CauseMode::CertainCauses;
  }

  // The returned cause only holds as a minimum condition.
  void necessary_only() {
    if (certain_policy()) out_.weakened = true;
  }

  Expr cause() {
    switch (c_.kind) {
      case Kind::And:
      case Kind::Or: return gate();
      case Kind::Not:
        require_boolean(effect_, c_.kind);
        return Expr::lit(args_[0], invert(effect_));
      case Kind::DNF:
        require_boolean(effect_, c_.kind);
        return dnf_model(args_, *c_.attrs.L, *c_.attrs.K, effect_, ctx_.policy().cause);
      case Kind::CNF:
        require_boolean(effect_, c_.kind);
        return cnf_model(args_, *c_.attrs.L, *c_.attrs.K, effect_, ctx_.policy().cause);
      case Kind::KooN:
        require_boolean(effect_, c_.kind);
        if (!certain_policy()) return same_mode_disjunction(args_, effect_);
        return koon_model(args_, *c_.attrs.n, *c_.attrs.k, effect_);
      case Kind::Add:
      case Kind::Avg:
        return monotone_model(args_, std::vector<Sign>(args_.size(), kPos), effect_);
      case Kind::Sub: return monotone_model(args_, {kPos, kNeg}, effect_);
      case Kind::Inv: return monotone_model(args_, {kNeg}, effect_);
      case Kind::Monotone: return monotone_model(args_, *c_.attrs.gradient, effect_);
      case Kind::Lim: return limiter();
      case Kind::Gcom:
      case Kind::Lcom: return comparator();
      case Kind::Abs: return absolute();
      case Kind::Mul: return product();
    }
    throw UnsupportedError("no model for kind " + to_string(c_.kind));
  }

  // And/Or. With value knowledge each input's deviation is paired with
  // the value its siblings must carry for the deviation to reach the
  // output; without any, the structural models apply.
  Expr gate() {
    require_boolean(effect_, c_.kind);
    bool is_and = c_.kind == Kind::And;
    bool commission = effect_ == FM::Commission;

    if (ctx_.value_dependent()) {
      // And/t and Or/f constrain siblings' reported values, the other two
      // cases their intended values. And wants siblings true, Or false.
      bool on_reported = is_and == commission;
      bool wanted = is_and;
      std::vector<std::optional<bool>> premise(args_.size());
      bool any_known = false;
      for (std::size_t j = 0; j < args_.size(); ++j) {
        auto v = on_reported ? ctx_.reported(args_[j]) : ctx_.intended(args_[j]);
        if (v) {
          premise[j] = std::get<bool>(*v) == wanted;
          any_known = true;
        }
      }
      if (any_known) {
        std::vector<Expr> terms;
        bool unknown = false;
        for (std::size_t i = 0; i < args_.size(); ++i) {
          std::vector<Expr> term{Expr::lit(args_[i], effect_)};
          for (std::size_t j = 0; j < args_.size(); ++j) {
            if (j == i) continue;
            if (!premise[j]) {
              unknown = true;
              continue;
            }
            term.push_back(*premise[j] ? Expr::top() : Expr::bottom());
          }
          terms.push_back(Expr::conj(std::move(term)));
        }
        for (std::size_t j = 0; j < args_.size(); ++j) {
          if (!premise[j]) continue;
          out_.premises.push_back(std::string(on_reported ? "reported(" : "intended(") +
                                  args_[j] + ")=" + (wanted ? "T" : "F") + " is " +
                                  (*premise[j] ? "true" : "false"));
        }
        if (unknown) necessary_only();
        return Expr::disj(std::move(terms));
      }
    }

    if (!certain_policy()) return same_mode_disjunction(args_, effect_);
    // And needs every input to commit, one omission suffices; Or dually.
    bool all = is_and == commission;
    return all ? same_mode_conjunction(args_, effect_)
               : same_mode_disjunction(args_, effect_);
  }

  Expr limiter() {
    require_real(effect_, c_.kind);
    for (std::size_t b = 1; b < 3; ++b) {
      if (!ctx_.is_certain(args_[b])) {
        throw UnsupportedError("Lim '" + c_.name + "': bound '" + args_[b] +
                               "' must be certain");
      }
    }
    // Saturation can absorb an input deviation entirely.
    necessary_only();
    return Expr::lit(args_[0], effect_);
  }

  Expr comparator() {
    require_boolean(effect_, c_.kind);
    // Gcom is x1 > x2: commission needs x1 to rise or x2 to fall.
    bool x1_up = (c_.kind == Kind::Gcom) == (effect_ == FM::Commission);
    FailureMode m1 = x1_up ? FM::High : FM::Low;
    necessary_only();
    return Expr::lit(args_[0], m1) || Expr::lit(args_[1], invert(m1));
  }

  Expr absolute() {
    require_real(effect_, c_.kind);
    if (auto s = ctx_.stable_sign(args_[0])) {
      if (*s == kZero) {
        throw UnreachableError("Abs '" + c_.name + "': input is zero in both worlds, so " +
                               to_string(effect_) + " cannot occur");
      }
      out_.premises.push_back("sign(" + args_[0] + ")=" + to_string(*s));
      return Expr::lit(args_[0], apply(direction_of_sign(*s == kNeg ? -1 : 1), effect_));
    }
    necessary_only();
    return any_deviation(args_);
  }

  Expr product() {
    require_real(effect_, c_.kind);
    const std::string& a = args_[0];
    const std::string& b = args_[1];
    bool ca = ctx_.is_certain(a);
    bool cb = ctx_.is_certain(b);

    if (ca != cb) {
      const std::string& p = ca ? a : b;
      const std::string& s = ca ? b : a;
      if (auto sign = ctx_.stable_sign(p)) {
        out_.premises.push_back("sign(" + p + ")=" + to_string(*sign));
        return mul_certain_param(s, effect_, *sign);
      }
      necessary_only();
      return any_deviation({s});
    }
    if (ca && cb) return Expr::bottom();

    auto sa = ctx_.stable_sign(a);
    auto sb = ctx_.stable_sign(b);
    if (sa && sb) {
      if (*sa == kZero || *sb == kZero) {
        throw UnreachableError("Mul '" + c_.name + "': a factor is zero in both worlds, so " +
                               to_string(effect_) + " cannot occur");
      }
      out_.premises.push_back("sign(" + a + ")=" + to_string(*sa));
      out_.premises.push_back("sign(" + b + ")=" + to_string(*sb));
      auto dir = [](Sign s) { return direction_of_sign(s == kNeg ? -1 : 1); };
      return Expr::lit(a, apply(dir(*sb), effect_)) || Expr::lit(b, apply(dir(*sa), effect_));
    }

    auto ra = ctx_.reported_sign(a);
    auto rb = ctx_.reported_sign(b);
    if (ra && rb) {
      out_.premises.push_back("sign(reported(" + a + "))=" + to_string(*ra));
      out_.premises.push_back("sign(reported(" + b + "))=" + to_string(*rb));
      necessary_only();
      return mul_table_model(a, b, effect_, *ra, *rb, [&](int arg) -> std::optional<bool> {
        auto s = ctx_.intended_sign(arg == 1 ? a : b);
        if (!s) return std::nullopt;
        return *s == kZero;
      });
    }

    necessary_only();
    return any_deviation(args_);
  }

  const ComponentDecl& c_;
  FailureMode effect_;
  const KnowledgeContext& ctx_;
  std::vector<std::string> args_;
  FailureScenario out_;
};

}  // namespace

FailureScenario local_model(const ComponentDecl& component, FailureMode effect,
                            const KnowledgeContext& ctx) {
  return Builder(component, effect, ctx).build();
}

Expr monotone_model(const std::vector<std::string>& args,
                    const std::vector<Sign>& gradient, FailureMode effect) {
  require_real(effect, Kind::Monotone);
  if (args.empty() || args.size() != gradient.size()) {
    throw UnsupportedError("monotone model needs one gradient sign per argument");
  }
  std::vector<Expr> lits;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (gradient[i] == kZero) {
      throw UnsupportedError("monotone model needs strictly signed gradients");
    }
    Direction d = direction_of_sign(gradient[i] == kNeg ? -1 : 1);
    lits.push_back(Expr::lit(args[i], apply(d, effect)));
  }
  return Expr::disj(std::move(lits));
}

Expr dnf_model(const std::vector<std::string>& args, int L, int K,
               FailureMode effect, CauseMode mode) {
  require_boolean(effect, Kind::DNF);
  auto rows = rows_of(args, L, K);
  if (mode == CauseMode::MinimumConditions) return same_mode_disjunction(args, effect);
  std::vector<Expr> parts;
  for (const auto& row : rows) {
    parts.push_back(effect == FM::Commission ? same_mode_conjunction(row, effect)
                                             : same_mode_disjunction(row, effect));
  }
  return effect == FM::Commission ? Expr::disj(std::move(parts))
                                  : Expr::conj(std::move(parts));
}

Expr cnf_model(const std::vector<std::string>& args, int L, int K,
               FailureMode effect, CauseMode mode) {
  require_boolean(effect, Kind::CNF);
  auto rows = rows_of(args, L, K);
  if (mode == CauseMode::MinimumConditions) return same_mode_disjunction(args, effect);
  std::vector<Expr> parts;
  for (const auto& row : rows) {
    parts.push_back(effect == FM::Omission ? same_mode_conjunction(row, effect)
                                           : same_mode_disjunction(row, effect));
  }
  return effect == FM::Omission ? Expr::disj(std::move(parts))
                                : Expr::conj(std::move(parts));
}

Expr koon_model(const std::vector<std::string>& args, int n, int k, FailureMode effect) {
  require_boolean(effect, Kind::KooN);
  if (k < 1 || k > n || args.size() != static_cast<std::size_t>(n)) {
    throw UnsupportedError("KooN needs 1 <= k <= n and n arguments");
  }
  int r = effect == FM::Commission ? k : n - k + 1;
  return subsets(args, r, effect);
}

Expr mul_certain_param(const std::string& x, FailureMode effect, Sign param_sign) {
  require_real(effect, Kind::Mul);
  if (param_sign == kZero) {
    throw UnreachableError("product with a zero factor cannot deviate (" +
                           to_string(effect) + ")");
  }
  return Expr::lit(x, apply(direction_of_sign(param_sign == kNeg ? -1 : 1), effect));
}

std::span<const MulTableRow> mul_table() { return kMulTable; }

Expr mul_table_model(const std::string& x1, const std::string& x2,
                     FailureMode effect, Sign reported1, Sign reported2,
                     const std::function<std::optional<bool>(int)>& intended_zero) {
  require_real(effect, Kind::Mul);
  const MulTableRow* row = nullptr;
  for (const auto& r : kMulTable) {
    if (r.effect == effect && r.reported1 == reported1 && r.reported2 == reported2) row = &r;
  }
  if (!row) throw UnsupportedError("no product table row");

  std::vector<Expr> terms;
  std::string_view text = row->cause;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    std::string_view term = text.substr(start, bar == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : bar - start);
    std::vector<Expr> atoms;
    bool dropped = false;
    for (std::size_t i = 0; i + 1 < term.size(); i += 2) {
      int arg = term[i] - '0';
      const std::string& var = arg == 1 ? x1 : x2;
      char what = term[i + 1];
      if (what == '0') {
        std::optional<bool> zero = intended_zero ? intended_zero(arg) : std::nullopt;
        if (!zero) {
          dropped = true;
          break;
        }
        atoms.push_back(*zero ? Expr::top() : Expr::bottom());
      } else {
        atoms.push_back(Expr::lit(var, *mode_from_char(what)));
      }
    }
    if (!dropped) terms.push_back(Expr::conj(std::move(atoms)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Expr::disj(std::move(terms));
}

}  // namespace fmr
