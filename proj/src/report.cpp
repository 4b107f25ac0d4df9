#include "fmr/report.hpp"

#include <sstream>

#include <json.hpp>

#include "fmr/error.hpp"

namespace fmr {

namespace {

using Json = nlohmann::ordered_json;

const char* const kModule = "cli-reporting";

[[noreturn]] void malformed(const std::string& what) {
  throw Error(kModule, "malformed report: " + what);
}

Json literal_json(const Literal& l) {
  return Json{{"variable", l.variable}, {"mode", to_string(l.mode)}};
}

Literal literal_from(const Json& j) {
  if (!j.is_object() || !j.contains("variable") || !j.contains("mode")) malformed("literal");
  auto mode = mode_from_char(j["mode"].get<std::string>().empty()
                                 ? '?'
                                 : j["mode"].get<std::string>().front());
  if (!mode || j["mode"].get<std::string>().size() != 1) malformed("failure mode");
  return Literal{j["variable"].get<std::string>(), *mode};
}

Json expr_json(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::False: return false;
    case Expr::Kind::True: return true;
    case Expr::Kind::Literal: return Json{{"lit", literal_json(e.literal())}};
    case Expr::Kind::And:
    case Expr::Kind::Or: break;
  }
  Json kids = Json::array();
  for (const Expr& c : e.children()) kids.push_back(expr_json(c));
  return Json{{e.kind() == Expr::Kind::And ? "and" : "or", std::move(kids)}};
}

Expr expr_from(const Json& j) {
  if (j.is_boolean()) return j.get<bool>() ? Expr::top() : Expr::bottom();
  if (!j.is_object() || j.size() != 1) malformed("expression");
  auto it = j.begin();
  if (it.key() == "lit") return Expr::lit(literal_from(it.value()));
  if ((it.key() != "and" && it.key() != "or") || !it->is_array()) malformed("expression");
  std::vector<Expr> kids;
  for (const Json& c : *it) kids.push_back(expr_from(c));
  return it.key() == "and" ? Expr::conj(std::move(kids)) : Expr::disj(std::move(kids));
}

Json term_json(const Term& t) {
  Json out = Json::array();
  for (const Literal& l : t) out.push_back(literal_json(l));
  return out;
}

Term term_from(const Json& j) {
  if (!j.is_array()) malformed("cut set");
  Term t;
  for (const Json& l : j) t.push_back(literal_from(l));
  return t;
}

std::optional<Verdict> verdict_from(std::string_view s) {
  for (Verdict v : {Verdict::Proved, Verdict::Unrefuted, Verdict::Refuted, Verdict::Inconclusive})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::string format_score(double d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

}  // namespace

std::string format_term(const Term& term) {
  std::string out = "{";
  for (std::size_t i = 0; i < term.size(); ++i) {
    if (i) out += ", ";
    out += to_string(term[i]);
  }
  return out + "}";
}

Report make_report(const AnalysisResult& result, bool with_trace) {
  Report r;
  r.target = result.target;
  r.policy = result.policy;
  r.cause = result.cause;
  r.weakened = result.weakened;
  r.reconvergent = result.reconvergent;
  r.loops = result.loops;
  r.cut_sets = explain(result);
  r.note = explain_note(result);
  if (with_trace) {
    r.trace.emplace();
    for (const TraceStep& s : result.trace) {
      r.trace->push_back({s.component, s.scenario.effect, s.scenario.cause,
                          s.scenario.premises, s.scenario.weakened});
    }
  }
  return r;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "target: " << to_string(r.target) << "\n";
  os << "policy: " << describe(r.policy) << "\n";
  os << "weakened: " << (r.weakened ? "yes" : "no") << "\n";
  if (r.reconvergent) {
    os << "warning: reconvergent fan-out in the target's cone; cut sets are "
          "composed causes and may not each guarantee the effect\n";
  }
  for (const FeedbackEdge& e : r.loops) {
    os << "loop broken: " << e.variable << " (" << e.producer << " -> " << e.consumer
       << ")\n";
  }
  os << "cause: " << to_string(r.cause) << "\n";
  os << "cut sets: " << r.cut_sets.size() << "\n";
  for (std::size_t i = 0; i < r.cut_sets.size(); ++i) {
    os << "  " << (i + 1) << ". " << format_term(r.cut_sets[i]) << "\n";
  }
  if (!r.note.empty()) os << "note: " << r.note << "\n";
  if (r.trace) {
    os << "trace:\n";
    for (const ReportStep& s : *r.trace) {
      os << "  " << s.component << ": " << to_string(s.effect) << " <= " << to_string(s.cause);
      if (s.weakened) os << "  [minimum condition]";
      os << "\n";
      for (const auto& p : s.premises) os << "    given " << p << "\n";
    }
  }
  if (r.checks) {
    os << "verification:\n";
    for (const ReportCheck& c : *r.checks) {
      os << "  " << c.subject << ": " << to_string(c.verdict) << " (" << c.checked
         << " assignments, " << c.witnesses << " producing the target)\n";
      if (!c.counterexample.empty()) os << "    counterexample: " << c.counterexample << "\n";
    }
  }
  return os.str();
}

std::string to_json(const Report& r) {
  Json j;
  j["target"] = literal_json(r.target);
  j["policy"] = {{"causes", to_string(r.policy.cause)}, {"values", to_string(r.policy.values)}};
  j["weakened"] = r.weakened;
  j["reconvergent"] = r.reconvergent;
  Json loops = Json::array();
  for (const FeedbackEdge& e : r.loops)
    loops.push_back({{"variable", e.variable}, {"producer", e.producer}, {"consumer", e.consumer}});
  j["loops"] = std::move(loops);
  j["cause"] = expr_json(r.cause);
  Json sets = Json::array();
  for (const Term& t : r.cut_sets) sets.push_back(term_json(t));
  j["cut_sets"] = std::move(sets);
  j["note"] = r.note;
  if (r.trace) {
    Json steps = Json::array();
    for (const ReportStep& s : *r.trace) {
      steps.push_back({{"component", s.component},
                       {"effect", literal_json(s.effect)},
                       {"cause", expr_json(s.cause)},
                       {"premises", s.premises},
                       {"weakened", s.weakened}});
    }
    j["trace"] = std::move(steps);
  }
  if (r.checks) {
    Json checks = Json::array();
    for (const ReportCheck& c : *r.checks) {
      checks.push_back({{"subject", c.subject},
                        {"verdict", to_string(c.verdict)},
                        {"checked", c.checked},
                        {"witnesses", c.witnesses},
                        {"counterexample", c.counterexample}});
    }
    j["verification"] = std::move(checks);
  }
  return j.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
  try {
    Report r;
    r.target = literal_from(j.at("target"));
    auto causes = cause_mode_from_string(j.at("policy").at("causes").get<std::string>());
    auto values = value_mode_from_string(j.at("policy").at("values").get<std::string>());
    if (!causes || !values) malformed("policy");
    r.policy = {*causes, *values};
    r.weakened = j.at("weakened").get<bool>();
    r.reconvergent = j.at("reconvergent").get<bool>();
    for (const Json& e : j.at("loops")) {
      r.loops.push_back({e.at("variable").get<std::string>(), e.at("producer").get<std::string>(),
                         e.at("consumer").get<std::string>()});
    }
    r.cause = expr_from(j.at("cause"));
    for (const Json& t : j.at("cut_sets")) r.cut_sets.push_back(term_from(t));
    r.note = j.at("note").get<std::string>();
    if (j.contains("trace")) {
      r.trace.emplace();
      for (const Json& s : j["trace"]) {
        r.trace->push_back({s.at("component").get<std::string>(), literal_from(s.at("effect")),
                            expr_from(s.at("cause")),
                            s.at("premises").get<std::vector<std::string>>(),
                            s.at("weakened").get<bool>()});
      }
    }
    if (j.contains("verification")) {
      r.checks.emplace();
      for (const Json& c : j["verification"]) {
        auto v = verdict_from(c.at("verdict").get<std::string>());
        if (!v) malformed("verdict");
        r.checks->push_back({c.at("subject").get<std::string>(), *v,
                             c.at("checked").get<std::size_t>(),
                             c.at("witnesses").get<std::size_t>(),
                             c.at("counterexample").get<std::string>()});
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

std::string expr_to_json(const Expr& e) { return expr_json(e).dump(); }

Expr expr_from_json(std::string_view text) {
  try {
    return expr_from(Json::parse(text.begin(), text.end()));
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

std::string to_text(const ImpactQuery& q, const ImpactResult& result) {
  std::ostringstream os;
  os << "change: " << q.variable << " " << to_string(q.from) << " -> " << to_string(q.to) << "\n";
  for (const OutputImpact& o : result.outputs) {
    os << "  " << o.output << ": " << to_string(o.before) << " -> " << to_string(o.after)
       << "  |cmp| = " << format_score(o.score) << "\n";
  }
  os << "impact: " << format_score(result.total) << "\n";
  return os.str();
}

std::string to_json(const ImpactQuery& q, const ImpactResult& result) {
  auto value = [](const Value& v) -> Json {
    if (const bool* b = std::get_if<bool>(&v)) return *b;
    return std::get<double>(v);
  };
  Json outs = Json::array();
  for (const OutputImpact& o : result.outputs) {
    outs.push_back({{"output", o.output},
                    {"before", to_string(o.before)},
                    {"after", to_string(o.after)},
                    {"score", o.score}});
  }
  Json j = {{"variable", q.variable},
            {"from", value(q.from)},
            {"to", value(q.to)},
            {"outputs", std::move(outs)},
            {"impact", result.total}};
  return j.dump(2) + "\n";
}

std::string to_json(const TruthTable& table) {
  Json j = {{"header", table.header}, {"rows", table.rows}};
  return j.dump(2) + "\n";
}

}  // namespace fmr
