#pragma once

/// @file report.hpp
/// Human-readable and JSON renderings of analysis, impact and truth-table
/// results. JSON analysis reports parse back to an equal Report.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmr/engine.hpp"
#include "fmr/impact.hpp"
#include "fmr/oracle.hpp"

namespace fmr {

struct ReportStep {
  std::string component;
  Literal effect;
  Expr cause;
  std::vector<std::string> premises;
  bool weakened = false;

  bool operator==(const ReportStep&) const = default;
};

/// Oracle verdict on one cut set, or on the whole cause for minimum
/// conditions (`subject` names which).
struct ReportCheck {
  std::string subject;
  Verdict verdict = Verdict::Inconclusive;
  std::size_t checked = 0;
  std::size_t witnesses = 0;
  std::string counterexample;

  bool operator==(const ReportCheck&) const = default;
};

struct Report {
  Literal target;
  Policy policy;
  Expr cause;
  bool weakened = false;
  bool reconvergent = false;
  std::vector<FeedbackEdge> loops;
  std::vector<Term> cut_sets;
  std::string note;
  std::optional<std::vector<ReportStep>> trace;
  std::optional<std::vector<ReportCheck>> checks;

  bool operator==(const Report&) const = default;
};

Report make_report(const AnalysisResult& result, bool with_trace);

std::string to_text(const Report& report);
std::string to_json(const Report& report);
/// Throws Error("cli-reporting") on malformed input.
Report report_from_json(std::string_view text);

/// Expressions as JSON: true/false, {"lit": {"variable", "mode"}},
/// {"and": [...]}, {"or": [...]}.
std::string expr_to_json(const Expr& e);
Expr expr_from_json(std::string_view text);

std::string to_text(const ImpactQuery& query, const ImpactResult& result);
std::string to_json(const ImpactQuery& query, const ImpactResult& result);

std::string to_json(const TruthTable& table);

/// Renders a term as "{a=h, b=l}".
std::string format_term(const Term& term);

}  // namespace fmr
