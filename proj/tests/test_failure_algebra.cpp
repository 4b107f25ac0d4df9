#include <doctest.h>

#include <random>

#include "fmr/error.hpp"
#include "fmr/expr.hpp"
#include "support.hpp"

using namespace fmr;
using FM = FailureMode;

namespace {

Expr L(const char* v, FM m) { return Expr::lit(v, m); }

}  // namespace

TEST_CASE("md classifies reported/intended pairs") {
  CHECK(md(5.0, 3.0) == FM::High);
  CHECK(md(3.0, 5.0) == FM::Low);
  for (double v : {-2.0, 0.0, 7.5}) CHECK(md(v, v) == FM::Match);
  CHECK(md(true, true) == FM::Match);
  CHECK(md(false, true) == FM::Omission);
  CHECK(md(true, false) == FM::Commission);
  CHECK_THROWS_AS(md(1.0, true), TypeError);
}

TEST_CASE("invert swaps directions and fixes match") {
  CHECK(invert(FM::High) == FM::Low);
  CHECK(invert(FM::Commission) == FM::Omission);
  CHECK(invert(FM::Match) == FM::Match);
  for (FM m : kAllModes) CHECK(invert(invert(m)) == m);
}

TEST_CASE("direction of sign") {
  CHECK(direction_of_sign(-2.5) == Direction::Invert);
  CHECK(direction_of_sign(0) == Direction::Identity);
  CHECK(direction_of_sign(7) == Direction::Identity);
  CHECK(compose(Direction::Invert, Direction::Invert) == Direction::Identity);
  CHECK(apply(Direction::Invert, FM::Low) == FM::High);
}

TEST_CASE("mode spelling round-trips") {
  for (FM m : kAllModes) CHECK(parse_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_mode("x"), TypeError);
  CHECK_THROWS_AS(parse_mode("hh"), TypeError);
  CHECK_THROWS_AS(make_literal("b", ValueType::Boolean, FM::High), TypeError);
  CHECK(make_literal("r", ValueType::Real, FM::Match).mode == FM::Match);
}

TEST_CASE("construction normalises") {
  Expr a = L("a", FM::Commission), b = L("b", FM::Omission), c = L("c", FM::High);
  SUBCASE("flattening and ordering") {
    Expr e = Expr::conj({c, Expr::conj({b, a})});
    REQUIRE(e.kind() == Expr::Kind::And);
    CHECK(e.children().size() == 3);
    CHECK(to_string(e) == "a=t & b=f & c=h");
    CHECK(e == Expr::conj({a, b, c}));
  }
  SUBCASE("constants propagate") {
    CHECK(Expr::conj({a, Expr::bottom()}).is_false());
    CHECK(Expr::conj({a, Expr::top()}) == a);
    CHECK(Expr::disj({a, Expr::top()}).is_true());
    CHECK(Expr::disj({}).is_false());
    CHECK(Expr::conj({}).is_true());
  }
  SUBCASE("duplicates and single children collapse") {
    CHECK(Expr::disj({a, a}) == a);
    CHECK(to_string((a && b) || c) == "c=h | (a=t & b=f)");
  }
  SUBCASE("wildcard desugars to the family") {
    CHECK(to_string(Expr::any("x", ValueType::Real)) == "x=h | x=l | x=m");
  }
  CHECK(Expr() == Expr::bottom());
}

TEST_CASE("simplify applies single-state and certainty rules") {
  CHECK(simplify(L("x", FM::High) && L("x", FM::Low)).is_false());
  CHECK(simplify(L("x", FM::Commission) || L("x", FM::Match) || L("x", FM::Omission)).is_true());
  auto x_certain = [](const std::string& v) { return v == "x"; };
  CHECK(simplify(L("x", FM::High) || L("p", FM::Low), x_certain) == L("p", FM::Low));
  CHECK(simplify(L("x", FM::Match) && L("p", FM::Low), x_certain) == L("p", FM::Low));
  // Inner collapse propagates outward.
  Expr nested = (L("a", FM::High) && L("a", FM::Low)) || L("b", FM::Low);
  CHECK(simplify(nested) == L("b", FM::Low));
}

namespace {

std::vector<support::VarSpec> mixed_vars() {
  return {{"a", ValueType::Boolean, false}, {"b", ValueType::Boolean, true},
          {"c", ValueType::Real, false},    {"d", ValueType::Real, false},
          {"e", ValueType::Boolean, false}, {"f", ValueType::Real, true}};
}

}  // namespace

TEST_CASE("simplify preserves meaning under consistent assignments") {
  auto vars = mixed_vars();
  auto certain = [&](const std::string& v) {
    for (const auto& s : vars)
      if (s.name == v) return s.certain;
    return false;
  };
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    Expr e = support::random_expr(rng, vars, 4);
    Expr s = simplify(e, certain);
    support::for_each_mode_assignment(vars, [&](const auto& a) {
      REQUIRE_MESSAGE(eval(s, a) == eval(e, a), to_string(e) << "  vs  " << to_string(s));
    });
  }
}

TEST_CASE("to_dnf") {
  Expr a = L("a", FM::Commission), b = L("b", FM::Commission), c = L("c", FM::Commission);
  CHECK(to_dnf((a || b) && c) == ((a && c) || (b && c)));
  Expr dnf = (a && b) || c;
  CHECK(to_dnf(dnf) == dnf);
  // Absorption: (a & b) | a has a as its only minimal term, which brute
  // force over {a, b} confirms is equivalent.
  Expr absorbed = to_dnf((a && b) || a);
  CHECK(absorbed == a);
  support::for_each_mode_assignment(
      {{"a", ValueType::Boolean, false}, {"b", ValueType::Boolean, false}},
      [&](const auto& m) { CHECK(eval(absorbed, m) == eval((a && b) || a, m)); });
  // Contradictory terms vanish.
  Expr x = L("x", FM::High), y = L("x", FM::Low);
  CHECK(to_dnf((x || a) && (y || b)) == ((a && b) || (a && y) || (b && x)));
}

TEST_CASE("to_dnf preserves meaning under consistent assignments") {
  auto vars = mixed_vars();
  for (auto& v : vars) v.certain = false;
  std::mt19937_64 rng(12);
  for (int round = 0; round < 300; ++round) {
    Expr e = support::random_expr(rng, vars, 4);
    Expr d = to_dnf(e);
    for (const Expr& term : d.children()) {
      if (d.kind() != Expr::Kind::Or) break;
      CHECK(term.kind() != Expr::Kind::Or);
    }
    support::for_each_mode_assignment(vars, [&](const auto& a) {
      REQUIRE_MESSAGE(eval(d, a) == eval(e, a), to_string(e) << "  vs  " << to_string(d));
    });
  }
}

TEST_CASE("to_dnf refuses to exceed the cap") {
  std::vector<Expr> clauses;
  for (int i = 0; i < 16; ++i) {
    std::string s = std::to_string(i);
    clauses.push_back(Expr::lit("a" + s, FM::Commission) || Expr::lit("b" + s, FM::Commission));
  }
  Expr e = Expr::conj(clauses);
  CHECK_THROWS_AS(to_dnf(e, 1000), BlowupError);
  CHECK(dnf_terms(e, 1 << 16).size() == (1u << 16));
}

TEST_CASE("dual") {
  Expr phi = Expr::conj({L("x1", FM::High), L("x2", FM::Low), L("x1", FM::Match) || L("x3", FM::High)});
  Expr expected =
      Expr::disj({L("x1", FM::Low), L("x2", FM::High), L("x1", FM::Match) && L("x3", FM::Low)});
  CHECK(dual(phi) == expected);
  CHECK(dual(L("x", FM::Match)) == L("x", FM::Match));
  CHECK(dual(Expr::top()).is_false());

  std::mt19937_64 rng(13);
  auto vars = mixed_vars();
  for (int round = 0; round < 200; ++round) {
    Expr e = support::random_expr(rng, vars, 4);
    CHECK(dual(dual(e)) == e);
  }
}

TEST_CASE("eval treats m as an ordinary mode") {
  Expr e = L("x", FM::Match) && L("y", FM::Commission);
  CHECK(eval(e, {{"y", FM::Commission}}));  // missing variables default to m
  CHECK_FALSE(eval(e, {{"x", FM::High}, {"y", FM::Commission}}));
}

TEST_CASE("substitute re-normalises") {
  Expr e = L("z", FM::Commission) || L("w", FM::Commission);
  Expr r = substitute(e, [](const Literal& l) -> std::optional<Expr> {
    if (l.variable == "z") return Expr::top();
    return std::nullopt;
  });
  CHECK(r.is_true());
  CHECK(variables(e) == std::set<std::string>{"w", "z"});
  CHECK(size(e) == 3);
}
