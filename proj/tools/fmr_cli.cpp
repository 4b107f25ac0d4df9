// fmr: failure-mode reasoning from the command line.
//
//   fmr analyze --model m.json --target y --mode t [--policy minimum]
//   fmr truth-table And --arity 2
//   fmr impact --model m.json --impact p=1:3
//   fmr validate --model m.json
//
// Reports go to stdout, diagnostics to stderr. Exit status is 0 on
// success, 1 on any analysis or model error and 2 on bad usage.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmr/engine.hpp"
#include "fmr/error.hpp"
#include "fmr/impact.hpp"
#include "fmr/model.hpp"
#include "fmr/oracle.hpp"
#include "fmr/report.hpp"

namespace {

constexpr int kUsage = 2;

struct Config {
  std::string model;
  std::string target;
  std::string mode;
  std::string policy = "certain";
  std::string values = "independent";
  std::string format = "text";
  std::size_t dnf_cap = fmr::kDefaultDnfCap;
  std::string impact;
  bool trace = false;
  bool verify = false;
  std::uint64_t seed = 0;
  std::string kind;
  std::optional<std::size_t> arity;
  std::vector<std::string> attrs;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<fmr::ReportCheck> verify(const fmr::SystemModel& model,
                                     const fmr::AnalysisResult& result,
                                     const std::vector<fmr::Term>& cut_sets, std::uint64_t seed) {
  fmr::OracleOptions opts;
  opts.seed = seed;
  opts.honor_knowledge = result.policy.values == fmr::ValueMode::Dependent;
  std::vector<fmr::ReportCheck> checks;
  auto record = [&](std::string subject, const fmr::VerifyResult& v) {
    checks.push_back({std::move(subject), v.verdict, v.checked, v.witnesses,
                      v.counterexample ? fmr::to_string(*v.counterexample) : ""});
  };
  if (result.policy.cause == fmr::CauseMode::CertainCauses && !result.weakened) {
    for (const fmr::Term& t : cut_sets) {
      record("cut set " + fmr::format_term(t),
             fmr::verify_certain_cause(model, t, result.target, opts));
    }
  }
  record("minimum conditions", fmr::verify_minimum_conditions(model, result.cause,
                                                              result.target, opts));
  return checks;
}

int analyze(const Config& cfg) {
  fmr::SystemModel model = fmr::load_model(cfg.model);
  auto mode = fmr::parse_mode(cfg.mode);
  fmr::Policy policy{*fmr::cause_mode_from_string(cfg.policy),
                     *fmr::value_mode_from_string(cfg.values)};
  fmr::AnalysisResult result =
      fmr::backward_reason(model, fmr::Literal{cfg.target, mode}, policy, {cfg.dnf_cap});
  fmr::Report report = fmr::make_report(result, cfg.trace);
  if (cfg.verify) report.checks = verify(model, result, report.cut_sets, cfg.seed);
  std::cout << (cfg.format == "json" ? fmr::to_json(report) : fmr::to_text(report));
  return 0;
}

int truth_table(const Config& cfg) {
  auto kind = fmr::kind_from_string(cfg.kind);
  if (!kind) throw UsageError("unknown kind '" + cfg.kind + "'");
  fmr::Attrs attrs;
  for (const auto& kv : cfg.attrs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--attr expects key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--attr " + key + " expects an integer");
    }
    if (key == "k") attrs.k = value;
    else if (key == "n") attrs.n = value;
    else if (key == "L") attrs.L = value;
    else if (key == "K") attrs.K = value;
    else throw UsageError("unknown attr '" + key + "'");
  }
  fmr::TruthTable table = fmr::truth_table(*kind, cfg.arity.value_or(*kind == fmr::Kind::Not ? 1 : 2), attrs);
  std::cout << (cfg.format == "json" ? fmr::to_json(table) : fmr::render(table));
  return 0;
}

int impact(const Config& cfg) {
  fmr::SystemModel model = fmr::load_model(cfg.model);
  auto eq = cfg.impact.find('=');
  auto colon = cfg.impact.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos) {
    throw UsageError("--impact expects <var>=<v>:<w>, got '" + cfg.impact + "'");
  }
  fmr::ImpactQuery q;
  q.variable = cfg.impact.substr(0, eq);
  const fmr::VariableDecl* decl = model.find_variable(q.variable);
  if (!decl) throw fmr::Error("impact", "unknown variable '" + q.variable + "'");
  q.from = fmr::parse_value(cfg.impact.substr(eq + 1, colon - eq - 1), decl->type);
  q.to = fmr::parse_value(cfg.impact.substr(colon + 1), decl->type);
  if (!cfg.target.empty()) q.outputs = {cfg.target};
  fmr::ImpactResult result = fmr::impact(model, q, fmr::baseline_assignment(model));
  std::cout << (cfg.format == "json" ? fmr::to_json(q, result) : fmr::to_text(q, result));
  return 0;
}

int validate(const Config& cfg) {
  std::vector<fmr::Diagnostic> diagnostics;
  try {
    diagnostics = fmr::validate(fmr::load_model(cfg.model));
  } catch (const fmr::ModelError& e) {
    diagnostics = e.diagnostics();
  }
  if (cfg.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& d : diagnostics)
      j.push_back({{"code", d.code}, {"subject", d.subject}, {"message", d.message}});
    std::cout << j.dump(2) << "\n";
  } else if (diagnostics.empty()) {
    std::cout << "ok\n";
  }
  for (const auto& d : diagnostics) std::cerr << "error [" << d.code << "]: " << d.message << "\n";
  return diagnostics.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Failure-mode reasoning over dataflow system models"};
  app.require_subcommand(1);
  Config cfg;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Derive the causes of an output failure");
  analyze_cmd->add_option("--model", cfg.model, "Model file")->required();
  analyze_cmd->add_option("--target", cfg.target, "System output to explain")->required();
  analyze_cmd->add_option("--mode", cfg.mode, "Observed failure mode")
      ->required()
      ->check(CLI::IsMember({"h", "l", "t", "f"}));
  analyze_cmd->add_option("--policy", cfg.policy, "certain causes or minimum conditions")
      ->check(CLI::IsMember({"certain", "minimum"}));
  analyze_cmd->add_option("--values", cfg.values, "Use known values and signs")
      ->check(CLI::IsMember({"independent", "dependent"}));
  analyze_cmd->add_option("--dnf-cap", cfg.dnf_cap, "Largest normal form allowed, in terms")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--trace", cfg.trace, "Include the local model of every expansion");
  analyze_cmd->add_flag("--verify", cfg.verify, "Check the result against fault simulation");
  analyze_cmd->add_option("--seed", cfg.seed, "Sampler grid seed for real-valued checks");
  add_format(analyze_cmd);

  CLI::App* table_cmd = app.add_subcommand("truth-table", "Print a failure truth table");
  table_cmd->add_option("kind", cfg.kind, "Boolean component kind")->required();
  table_cmd->add_option("--arity", cfg.arity, "Number of inputs, 1-4 (default 1 for Not, else 2)");
  table_cmd->add_option("--attr", cfg.attrs, "Kind attribute key=value");
  add_format(table_cmd);

  CLI::App* impact_cmd = app.add_subcommand("impact", "Score a proposed value change");
  impact_cmd->add_option("--model", cfg.model, "Model file")->required();
  impact_cmd->add_option("--impact", cfg.impact, "Change as <var>=<v>:<w>")->required();
  impact_cmd->add_option("--target", cfg.target, "Score only this output");
  add_format(impact_cmd);

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a model file");
  validate_cmd->add_option("--model", cfg.model, "Model file")->required();
  add_format(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(cfg);
    if (table_cmd->parsed()) return truth_table(cfg);
    if (impact_cmd->parsed()) return impact(cfg);
    return validate(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const fmr::ModelError& e) {
    for (const auto& d : e.diagnostics())
      std::cerr << "error [" << e.module() << "/" << d.code << "]: " << d.message << "\n";
    return 1;
  } catch (const fmr::Error& e) {
    std::cerr << "error [" << e.module() << "]: " << e.what() << "\n";
    return 1;
  }
}
