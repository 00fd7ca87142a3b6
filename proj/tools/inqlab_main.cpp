// inqlab: support-semantics model checking from the command line.
//
// Subcommands: eval, inqbq-eval, paper, finiteness-demo, reduce3sat,
// translate-check, suite. Exit codes: 0 on success/pass, 1 on a property
// violation or verdict mismatch, 2 on usage, file, or parse errors.

#include <bit>
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "inqlab/constructions.hpp"
#include "inqlab/evaluator.hpp"
#include "inqlab/inqbq.hpp"
#include "inqlab/json_io.hpp"
#include "inqlab/metatheory.hpp"
#include "inqlab/parser.hpp"

using namespace inqlab;
using ordered_json = nlohmann::ordered_json;

namespace {

struct OutputOptions {
  std::string format = "text";
  bool timing = false;  // timing is opt-in so json output stays byte-stable
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--timing", out.timing, "Include wall-clock timing in the output");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void emit(const OutputOptions& out, ordered_json& payload, const std::string& text,
          const Timer& timer) {
  if (out.format == "json") {
    if (out.timing) payload["seconds"] = timer.seconds();
    std::cout << payload.dump(2) << std::endl;
  } else {
    std::cout << text;
    if (out.timing) std::cout << "elapsed=" << timer.seconds() << "s\n";
  }
}

EvalPath parse_path(const std::string& name) {
  return name == "reference" ? EvalPath::Reference : EvalPath::Fast;
}

ordered_json stats_json(const EvalStats& stats) {
  ordered_json j;
  j["path"] = stats.fast ? "fast" : "reference";
  j["implication_masks"] = stats.implication_masks;
  j["memo_hits"] = stats.memo_hits;
  j["memo_entries"] = stats.memo_entries;
  j["flat_shortcuts"] = stats.flat_shortcuts;
  j["pattern_shortcuts"] = stats.pattern_shortcuts;
  return j;
}

int run_eval(const std::string& model_path, const std::string& team_path,
             const std::string& formula_text, const std::string& path_name, int cap,
             const OutputOptions& out) {
  Timer timer;
  Structure m = structure_from_json(read_file(model_path));
  Team team = team_from_json(read_file(team_path));
  FormulaPtr formula = parse(formula_text, m.sig);
  EvalConfig cfg;
  cfg.naive_subteam_cap = cap;
  EvalPath path = parse_path(path_name);
  EvalStats stats;
  const bool verdict = supports_path(m, team, formula, path, cfg, &stats);

  ordered_json payload;
  payload["command"] = "eval";
  payload["formula"] = render(formula);
  payload["verdict"] = verdict;
  payload["stats"] = stats_json(stats);
  std::string text = "verdict=" + std::string(verdict ? "true" : "false") + "\n";

  if (!verdict) {
    // Replay bundle: everything needed to reproduce the refutation.
    ordered_json bundle;
    bundle["model"] = ordered_json::parse(structure_to_json(m, -1));
    bundle["team"] = ordered_json::parse(team_to_json(team, -1));
    bundle["formula"] = render(formula);
    payload["replay"] = std::move(bundle);
    if (formula->kind == Conn::Implies &&
        static_cast<int>(team.size()) <= cfg.naive_subteam_cap) {
      auto witness = find_falsifying_subteam(m, team, formula->left, formula->right, cfg);
      if (witness) {
        payload["witness"] = ordered_json::parse(team_to_json(*witness, -1));
        text += "witness sub-team (supports antecedent, refutes consequent):\n" +
                team_to_json(*witness) + "\n";
      }
    }
  }
  emit(out, payload, text, timer);
  return 0;
}

int run_inqbq_eval(const std::string& model_path, const std::string& formula_text,
                   const std::string& state_spec, const OutputOptions& out) {
  Timer timer;
  InfoModel m = info_model_from_json(read_file(model_path));
  FormulaPtr formula = parse(formula_text, m.signature());
  if (!is_inqbt(*formula))
    throw ParseError("the range quantifier is not part of the InqBQ language", {0, 0}, 1, 1);
  StateMask state = full_state(m);
  if (!state_spec.empty()) {
    state = 0;
    std::istringstream in(state_spec);
    std::string field;
    while (std::getline(in, field, ',')) {
      const int w = std::stoi(field);
      if (w < 0 || w >= m.world_count()) throw std::invalid_argument("world index out of range");
      state |= StateMask(1) << w;
    }
  }
  const bool verdict = state_supports(m, state, {}, formula);

  ordered_json payload;
  payload["command"] = "inqbq-eval";
  payload["formula"] = render(formula);
  payload["worlds_in_state"] = std::popcount(state);
  payload["verdict"] = verdict;
  std::string text = "verdict=" + std::string(verdict ? "true" : "false") + "\n";
  emit(out, payload, text, timer);
  return 0;
}

int run_paper(const std::string& name, bool list, const OutputOptions& out) {
  Timer timer;
  if (list) {
    ordered_json payload;
    payload["command"] = "paper";
    payload["names"] = paper_formula_names();
    std::string text;
    for (const auto& n : paper_formula_names()) text += n + "\n";
    emit(out, payload, text, timer);
    return 0;
  }
  FormulaPtr f = paper_formula(name);
  ordered_json payload;
  payload["command"] = "paper";
  payload["name"] = name;
  payload["formula"] = render(f);
  emit(out, payload, render(f) + "\n", timer);
  return 0;
}

int run_finiteness_demo(int n, const std::string& path_name, const OutputOptions& out) {
  Timer timer;
  if (n < 1 || n > 5) throw std::invalid_argument("--n must lie in 1..5");
  Structure m;
  m.domain_size = n;
  EvalConfig cfg;
  cfg.naive_subteam_cap = std::max(cfg.naive_subteam_cap, n * n + 1);
  EvalPath path = parse_path(path_name);
  const bool psi = satisfies(m, paper_formula("psi_finiteness"), cfg, path);
  const bool neg = satisfies(m, paper_formula("psi_neg_infinity"), cfg, path);

  ordered_json payload;
  payload["command"] = "finiteness-demo";
  payload["domain"] = n;
  payload["psi_finiteness"] = psi;
  payload["psi_neg_infinity"] = neg;
  std::ostringstream text;
  text << "domain=" << n << " psi_finiteness=" << (psi ? "true" : "false")
       << " psi_neg_infinity=" << (neg ? "true" : "false") << "\n";

  if (n <= 4) {
    // Relation-shape census over every sub-team of the maximal (x, y) team.
    Team maximal = Team::maximal({"x", "y"}, n);
    uint64_t functions = 0, injective = 0, dom_full = 0, ran_full = 0, falsifying = 0;
    const uint64_t total = uint64_t(1) << maximal.size();
    for (uint64_t mask = 0; mask < total; ++mask) {
      DepProfile p = relation_profile(team_relation(subteam(maximal, mask), {"x", "y"}), n);
      functions += p.is_function;
      injective += p.is_injective;
      dom_full += p.dom_is_full;
      ran_full += p.ran_is_full;
      falsifying += p.is_function && p.is_injective && p.dom_is_full && !p.ran_is_full;
    }
    ordered_json census;
    census["subteams"] = total;
    census["functions"] = functions;
    census["injective"] = injective;
    census["dom_full"] = dom_full;
    census["ran_full"] = ran_full;
    census["falsifying"] = falsifying;
    payload["census"] = std::move(census);
    text << "sub-teams=" << total << " functions=" << functions << " injective=" << injective
         << " dom_full=" << dom_full << " ran_full=" << ran_full
         << " falsifying=" << falsifying << "\n";
  } else {
    text << "sub-team census skipped for domain > 4 (2^25 masks)\n";
  }
  emit(out, payload, text.str(), timer);
  return 0;
}

int run_reduce3sat(const std::string& cnf_path, const OutputOptions& out) {
  Timer timer;
  CnfInstance cnf = parse_dimacs(read_file(cnf_path));
  ReductionOutput r = encode_3sat(cnf);
  const bool supported = supports(r.structure, r.team, r.formula);
  const bool sat = sat_oracle(cnf);
  const bool agree = supported == !sat;

  ordered_json payload;
  payload["command"] = "reduce3sat";
  payload["variables"] = cnf.variable_count;
  payload["clauses"] = cnf.clauses.size();
  payload["supports"] = supported;
  payload["sat"] = sat;
  payload["agree"] = agree;

  std::ostringstream text;
  text << "supports=" << (supported ? "true" : "false") << ", sat=" << (sat ? "true" : "false")
       << ", " << (agree ? "AGREE" : "MISMATCH") << "\n";

  if (sat) {
    auto witness = find_falsifying_subteam(r.structure, r.team, r.formula->left, r.formula->right);
    if (witness) {
      auto assignment = extract_assignment(r, *witness);
      ordered_json aj = ordered_json::object();
      for (const auto& [v, value] : assignment) aj[std::to_string(v + 1)] = value;
      payload["witness_assignment"] = std::move(aj);
      text << "witness assignment:";
      for (const auto& [v, value] : assignment) text << ' ' << (value ? "" : "-") << v + 1;
      text << "\n";
    }
  }
  emit(out, payload, text.str(), timer);
  return agree ? 0 : 1;
}

int run_translate_check(int max_worlds, int max_domain, const OutputOptions& out) {
  Timer timer;
  Signature sig;
  sig.predicate("P", 1).constant("a");
  auto pairs = sample_translations();

  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  bool all_agree = true;
  for (const auto& pair : pairs) {
    uint64_t models = 0, agreements = 0;
    for (int worlds = 1; worlds <= max_worlds; ++worlds) {
      for (int domain = 1; domain <= max_domain; ++domain) {
        InfoModelEnumerator e(sig, worlds, domain);
        for (uint64_t i = 0; i < e.count(); ++i) {
          InfoModel m = e.at(i);
          ++models;
          agreements += inqbq_satisfies(m, pair.inqbq) ==
                        fo2_eval(encode_relational(m), pair.classical);
        }
      }
    }
    all_agree &= agreements == models;
    ordered_json row;
    row["inqbq"] = pair.label;
    row["classical"] = fo2::to_string(pair.classical);
    row["models"] = models;
    row["agreements"] = agreements;
    rows.push_back(std::move(row));
    text << pair.label << "  <->  " << fo2::to_string(pair.classical) << "  agree on "
         << agreements << "/" << models << " models\n";
  }
  ordered_json payload;
  payload["command"] = "translate-check";
  payload["pairs"] = std::move(rows);
  payload["passed"] = all_agree;
  text << (all_agree ? "PASS" : "FAIL") << "\n";
  emit(out, payload, text.str(), timer);
  return all_agree ? 0 : 1;
}

int run_suite(const std::string& tier, SuiteConfig cfg, const std::string& path_name, int workers,
              const OutputOptions& out) {
  Timer timer;
  EvalPath path = parse_path(path_name);
  SuiteReport report;
  if (tier == "exhaustive" || tier == "both") report.merge(run_exhaustive(cfg, path, workers));
  if (tier == "random" || tier == "both") report.merge(run_randomized(cfg, workers));

  ordered_json payload = ordered_json::parse(suite_report_to_json(report));
  emit(out, payload, report.table() + (report.passed() ? "PASS\n" : "FAIL\n"), timer);
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model-checking laboratory for inquisitive team logics"};
  app.require_subcommand(1);

  OutputOptions out;

  // eval
  std::string model_path, team_path, formula_text, path_name = "fast";
  int cap = 20;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate support of a formula on a model and team");
  eval_cmd->add_option("--model", model_path, "Model JSON file")->required();
  eval_cmd->add_option("--team", team_path, "Team JSON file")->required();
  eval_cmd->add_option("--formula", formula_text, "Formula text")->required();
  eval_cmd->add_option("--path", path_name, "Evaluator path")
      ->check(CLI::IsMember({"fast", "reference"}));
  eval_cmd->add_option("--cap", cap, "Sub-team enumeration cap");
  add_output_flags(eval_cmd, out);

  // inqbq-eval
  std::string info_model_path, inqbq_formula, state_spec;
  auto* inqbq_cmd =
      app.add_subcommand("inqbq-eval", "Evaluate an InqBQ sentence on an information model");
  inqbq_cmd->add_option("--model", info_model_path, "Info-model JSON file")->required();
  inqbq_cmd->add_option("--formula", inqbq_formula, "Sentence text")->required();
  inqbq_cmd->add_option("--state", state_spec, "Comma-separated world indices (default: all)");
  add_output_flags(inqbq_cmd, out);

  // paper
  std::string paper_name;
  bool paper_list = false;
  auto* paper_cmd = app.add_subcommand("paper", "Print a named formula");
  paper_cmd->add_option("name", paper_name, "Formula name");
  paper_cmd->add_flag("--list", paper_list, "List available names");
  add_output_flags(paper_cmd, out);

  // finiteness-demo
  int demo_n = 3;
  std::string demo_path = "fast";
  auto* demo_cmd =
      app.add_subcommand("finiteness-demo", "Finiteness sentence and relation census at size n");
  demo_cmd->add_option("--n", demo_n, "Domain size (1..5)")->required();
  demo_cmd->add_option("--path", demo_path, "Evaluator path")
      ->check(CLI::IsMember({"fast", "reference"}));
  add_output_flags(demo_cmd, out);

  // reduce3sat
  std::string cnf_path;
  auto* reduce_cmd =
      app.add_subcommand("reduce3sat", "Encode a 3-CNF, evaluate, cross-check the SAT oracle");
  reduce_cmd->add_option("--cnf", cnf_path, "DIMACS file")->required();
  add_output_flags(reduce_cmd, out);

  // translate-check
  int max_worlds = 2, max_domain = 2;
  auto* translate_cmd =
      app.add_subcommand("translate-check", "Sweep the InqBQ/two-sorted translation rows");
  translate_cmd->add_option("--max-worlds", max_worlds, "World-count bound");
  translate_cmd->add_option("--max-domain", max_domain, "Domain-size bound");
  add_output_flags(translate_cmd, out);

  // suite
  std::string tier = "both", suite_path = "fast";
  SuiteConfig suite_cfg;
  int workers = 0;
  auto* suite_cmd = app.add_subcommand("suite", "Run the metatheory property suites");
  suite_cmd->add_option("--tier", tier, "Which tier to run")
      ->check(CLI::IsMember({"exhaustive", "random", "both"}));
  suite_cmd->add_option("--max-domain", suite_cfg.max_domain, "Exhaustive-tier domain bound");
  suite_cmd->add_option("--max-vars", suite_cfg.max_vars, "Team variable count");
  suite_cmd->add_option("--depth", suite_cfg.max_formula_depth, "Corpus depth bound");
  suite_cmd->add_option("--seed", suite_cfg.random_seed, "Random-tier seed");
  suite_cmd->add_option("--samples", suite_cfg.sample_count, "Random-tier draw count");
  suite_cmd->add_option("--workers", workers, "Worker threads (0 = auto)");
  suite_cmd->add_option("--path", suite_path, "Evaluator path for the exhaustive tier")
      ->check(CLI::IsMember({"fast", "reference"}));
  add_output_flags(suite_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) return run_eval(model_path, team_path, formula_text, path_name, cap, out);
    if (*inqbq_cmd) return run_inqbq_eval(info_model_path, inqbq_formula, state_spec, out);
    if (*paper_cmd) {
      if (!paper_list && paper_name.empty())
        throw std::invalid_argument("paper: give a formula name or --list");
      return run_paper(paper_name, paper_list, out);
    }
    if (*demo_cmd) return run_finiteness_demo(demo_n, demo_path, out);
    if (*reduce_cmd) return run_reduce3sat(cnf_path, out);
    if (*translate_cmd) return run_translate_check(max_worlds, max_domain, out);
    if (*suite_cmd) return run_suite(tier, suite_cfg, suite_path, workers, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}
