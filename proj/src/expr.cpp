#include "fmr/expr.hpp"

#include <algorithm>
#include <optional>

#include "fmr/error.hpp"

namespace fmr {

std::strong_ordering Literal::operator<=>(const Literal& other) const {
  if (auto c = variable <=> other.variable; c != 0) return c;
  return to_char(mode) <=> to_char(other.mode);
}

std::string to_string(const Literal& lit) {
  return lit.variable + "=" + to_char(lit.mode);
}

Literal make_literal(std::string variable, ValueType type, FailureMode mode) {
  if (!compatible(mode, type)) {
    throw TypeError("mode " + to_string(mode) + " does not apply to " +
                    to_string(type) + " variable '" + variable + "'");
  }
  return Literal{std::move(variable), mode};
}

struct Expr::Node {
  Kind kind = Kind::False;
  Literal literal;
  std::vector<Expr> children;
};

namespace {

int rank(Expr::Kind k) { return static_cast<int>(k); }

}  // namespace

Expr::Expr() : Expr(bottom()) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::top() {
  static const Expr kTrue(std::make_shared<const Node>(Node{Kind::True, {}, {}}));
  return kTrue;
}

Expr Expr::bottom() {
  static const Expr kFalse(
      std::make_shared<const Node>(Node{Kind::False, {}, {}}));
  return kFalse;
}

Expr Expr::lit(Literal literal) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::Literal, std::move(literal), {}}));
}

Expr Expr::lit(std::string variable, FailureMode mode) {
  return lit(Literal{std::move(variable), mode});
}

namespace {

// Shared body of conj/disj. `self` is the connective being built, `unit`
// its neutral constant and `zero` its absorbing constant.
std::vector<Expr> gather(std::vector<Expr>& children, Expr::Kind self,
                         Expr::Kind unit, Expr::Kind zero, bool& absorbed) {
  std::vector<Expr> flat;
  flat.reserve(children.size());
  for (Expr& c : children) {
    if (c.kind() == zero) {
      absorbed = true;
      return {};
    }
    if (c.kind() == unit) continue;
    if (c.kind() == self) {
      for (const Expr& g : c.children()) flat.push_back(g);
    } else {
      flat.push_back(std::move(c));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  return flat;
}

}  // namespace

Expr Expr::conj(std::vector<Expr> children) {
  bool absorbed = false;
  auto flat = gather(children, Kind::And, Kind::True, Kind::False, absorbed);
  if (absorbed) return bottom();
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat.front();
  return Expr(std::make_shared<const Node>(Node{Kind::And, {}, std::move(flat)}));
}

Expr Expr::disj(std::vector<Expr> children) {
  bool absorbed = false;
  auto flat = gather(children, Kind::Or, Kind::False, Kind::True, absorbed);
  if (absorbed) return top();
  if (flat.empty()) return bottom();
  if (flat.size() == 1) return flat.front();
  return Expr(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(flat)}));
}

Expr Expr::any(const std::string& variable, ValueType type) {
  std::vector<Expr> options;
  for (FailureMode m : family(type)) options.push_back(lit(variable, m));
  return disj(std::move(options));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

const Literal& Expr::literal() const {
  if (node_->kind != Kind::Literal) {
    throw std::logic_error("Expr::literal() on a non-literal");
  }
  return node_->literal;
}

std::span<const Expr> Expr::children() const noexcept {
  return {node_->children.data(), node_->children.size()};
}

std::strong_ordering Expr::operator<=>(const Expr& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = rank(kind()) <=> rank(other.kind()); c != 0) return c;
  switch (kind()) {
    case Kind::False:
    case Kind::True: return std::strong_ordering::equal;
    case Kind::Literal: return literal() <=> other.literal();
    case Kind::And:
    case Kind::Or: break;
  }
  auto a = children();
  auto b = other.children();
  // Shorter connectives first so that small cut sets lead.
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool Expr::operator==(const Expr& other) const {
  return (*this <=> other) == 0;
}

Expr operator&&(const Expr& a, const Expr& b) { return Expr::conj({a, b}); }
Expr operator||(const Expr& a, const Expr& b) { return Expr::disj({a, b}); }

namespace {

void print(const Expr& e, std::string& out, bool nested) {
  switch (e.kind()) {
    case Expr::Kind::False: out += "false"; return;
    case Expr::Kind::True: out += "true"; return;
    case Expr::Kind::Literal: out += to_string(e.literal()); return;
    case Expr::Kind::And:
    case Expr::Kind::Or: break;
  }
  const char* sep = e.kind() == Expr::Kind::And ? " & " : " | ";
  if (nested) out += '(';
  bool first = true;
  for (const Expr& c : e.children()) {
    if (!first) out += sep;
    first = false;
    print(c, out, true);
  }
  if (nested) out += ')';
}

void collect(const Expr& e, std::set<std::string>& vars) {
  if (e.is_literal()) {
    vars.insert(e.literal().variable);
    return;
  }
  for (const Expr& c : e.children()) collect(c, vars);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out, false);
  return out;
}

std::set<std::string> variables(const Expr& e) {
  std::set<std::string> vars;
  collect(e, vars);
  return vars;
}

std::size_t size(const Expr& e) {
  std::size_t n = 1;
  for (const Expr& c : e.children()) n += size(c);
  return n;
}

bool eval(const Expr& e,
          const std::function<FailureMode(const std::string&)>& mode_of) {
  switch (e.kind()) {
    case Expr::Kind::False: return false;
    case Expr::Kind::True: return true;
    case Expr::Kind::Literal:
      return mode_of(e.literal().variable) == e.literal().mode;
    case Expr::Kind::And:
      for (const Expr& c : e.children())
        if (!eval(c, mode_of)) return false;
      return true;
    case Expr::Kind::Or:
      for (const Expr& c : e.children())
        if (eval(c, mode_of)) return true;
      return false;
  }
  return false;
}

bool eval(const Expr& e, const std::map<std::string, FailureMode>& assignment) {
  return eval(e, [&](const std::string& v) {
    auto it = assignment.find(v);
    return it == assignment.end() ? FailureMode::Match : it->second;
  });
}

Expr substitute(const Expr& e,
                const std::function<std::optional<Expr>(const Literal&)>& fn) {
  switch (e.kind()) {
    case Expr::Kind::False:
    case Expr::Kind::True: return e;
    case Expr::Kind::Literal: {
      if (auto r = fn(e.literal())) return *r;
      return e;
    }
    case Expr::Kind::And:
    case Expr::Kind::Or: break;
  }
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  for (const Expr& c : e.children()) kids.push_back(substitute(c, fn));
  return e.kind() == Expr::Kind::And ? Expr::conj(std::move(kids))
                                     : Expr::disj(std::move(kids));
}

Expr dual(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::False: return Expr::top();
    case Expr::Kind::True: return Expr::bottom();
    case Expr::Kind::Literal:
      return Expr::lit(e.literal().variable, invert(e.literal().mode));
    case Expr::Kind::And:
    case Expr::Kind::Or: break;
  }
  std::vector<Expr> kids;
  for (const Expr& c : e.children()) kids.push_back(dual(c));
  return e.kind() == Expr::Kind::And ? Expr::disj(std::move(kids))
                                     : Expr::conj(std::move(kids));
}

namespace {

// Modes per variable among the literal children of a connective.
std::map<std::string, std::set<FailureMode>> literal_modes(const Expr& e) {
  std::map<std::string, std::set<FailureMode>> modes;
  for (const Expr& c : e.children()) {
    if (c.is_literal()) modes[c.literal().variable].insert(c.literal().mode);
  }
  return modes;
}

bool covers_family(const std::set<FailureMode>& modes) {
  if (!modes.count(FailureMode::Match)) return false;
  bool real = modes.count(FailureMode::High) && modes.count(FailureMode::Low);
  bool boolean = modes.count(FailureMode::Commission) &&
                 modes.count(FailureMode::Omission);
  return real || boolean;
}

}  // namespace

Expr simplify(const Expr& e,
              const std::function<bool(const std::string&)>& is_certain) {
  switch (e.kind()) {
    case Expr::Kind::False:
    case Expr::Kind::True: return e;
    case Expr::Kind::Literal:
      if (is_certain && is_certain(e.literal().variable)) {
        return e.literal().mode == FailureMode::Match ? Expr::top()
                                                      : Expr::bottom();
      }
      return e;
    case Expr::Kind::And:
    case Expr::Kind::Or: break;
  }
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  for (const Expr& c : e.children()) kids.push_back(simplify(c, is_certain));
  if (e.kind() == Expr::Kind::And) {
    Expr r = Expr::conj(std::move(kids));
    if (r.kind() != Expr::Kind::And) return r;
    for (const auto& [var, modes] : literal_modes(r)) {
      if (modes.size() > 1) return Expr::bottom();
    }
    return r;
  }
  Expr r = Expr::disj(std::move(kids));
  if (r.kind() != Expr::Kind::Or) return r;
  for (const auto& [var, modes] : literal_modes(r)) {
    if (covers_family(modes)) return Expr::top();
  }
  return r;
}

namespace {

// Merges two sorted terms; returns nullopt when they demand different
// modes of one variable.
std::optional<Term> merge(const Term& a, const Term& b) {
  Term out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    const Literal* next;
    if (j == b.end() || (i != a.end() && *i < *j)) {
      next = &*i++;
    } else if (i == a.end() || *j < *i) {
      next = &*j++;
    } else {
      next = &*i++;
      ++j;
    }
    if (!out.empty() && out.back().variable == next->variable &&
        out.back().mode != next->mode) {
      return std::nullopt;
    }
    if (out.empty() || !(out.back() == *next)) out.push_back(*next);
  }
  return out;
}

void absorb(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  // Distinct terms of equal size never absorb each other, so only the
  // strictly shorter prefix of `kept` needs checking.
  std::vector<Term> kept;
  std::size_t shorter = 0;
  for (Term& t : terms) {
    while (shorter < kept.size() && kept[shorter].size() < t.size()) ++shorter;
    bool subsumed = std::any_of(kept.begin(), kept.begin() + static_cast<long>(shorter),
                                [&](const Term& k) {
                                  return std::includes(t.begin(), t.end(), k.begin(), k.end());
                                });
    if (!subsumed) kept.push_back(std::move(t));
  }
  terms = std::move(kept);
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw BlowupError("failure-algebra",
                      "normal form exceeds the cap of " + std::to_string(cap) +
                          " terms");
  }
}

std::vector<Term> terms_of(const Expr& e, std::size_t cap) {
  switch (e.kind()) {
    case Expr::Kind::False: return {};
    case Expr::Kind::True: return {Term{}};
    case Expr::Kind::Literal: return {Term{e.literal()}};
    case Expr::Kind::Or: {
      std::vector<Term> out;
      for (const Expr& c : e.children()) {
        auto sub = terms_of(c, cap);
        out.insert(out.end(), std::make_move_iterator(sub.begin()),
                   std::make_move_iterator(sub.end()));
        check_cap(out.size(), cap);
      }
      absorb(out);
      return out;
    }
    case Expr::Kind::And: break;
  }
  std::vector<Term> acc{Term{}};
  for (const Expr& c : e.children()) {
    auto sub = terms_of(c, cap);
    std::vector<Term> next;
    for (const Term& a : acc) {
      for (const Term& b : sub) {
        if (auto m = merge(a, b)) next.push_back(std::move(*m));
      }
      check_cap(next.size(), cap);
    }
    absorb(next);
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

}  // namespace

std::vector<Term> dnf_terms(const Expr& e, std::size_t cap) {
  auto terms = terms_of(e, cap);
  absorb(terms);
  return terms;
}

Expr from_terms(const std::vector<Term>& terms) {
  std::vector<Expr> disjuncts;
  disjuncts.reserve(terms.size());
  for (const Term& t : terms) {
    std::vector<Expr> lits;
    for (const Literal& l : t) lits.push_back(Expr::lit(l));
    disjuncts.push_back(Expr::conj(std::move(lits)));
  }
  return Expr::disj(std::move(disjuncts));
}

Expr to_dnf(const Expr& e, std::size_t cap) {
  return from_terms(dnf_terms(e, cap));
}

}  // namespace fmr
