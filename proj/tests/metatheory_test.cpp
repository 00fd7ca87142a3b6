#include <doctest.h>

#include "inqlab/constructions.hpp"
#include "inqlab/metatheory.hpp"

using namespace inqlab;

TEST_CASE("metatheory: corpus size matches the counted closed form") {
  SuiteConfig cfg;  // depth 2, two variables
  FormulaCorpus corpus(cfg);

  // Closed form: terms = vars + constant; depth-1 = bot + P + Q + equalities;
  // depth-2 = 3 * pairs + 3 quantifiers * vars * depth-1; plus 3 named.
  const uint64_t terms = 3;
  const uint64_t depth1 = 1 + terms + terms * terms + terms * terms;
  const uint64_t depth2 = 3 * depth1 * depth1 + 3 * 2 * depth1;
  CHECK(depth1 == 22);
  CHECK(corpus.size() == depth1 + depth2 + 3);
  CHECK(corpus.size() == 1609);  // golden value

  // Depth-1 formulas include the atoms and bot.
  bool has_bot = false, has_px = false, has_eq = false;
  for (uint64_t i = 0; i < depth1; ++i) {
    FormulaPtr f = corpus.at(i);
    has_bot |= f->kind == Conn::Bottom;
    has_px |= ast_equal(f, atom("P", {var("x")}));
    has_eq |= ast_equal(f, equal(var("x"), var("y")));
  }
  CHECK(has_bot);
  CHECK(has_px);
  CHECK(has_eq);

  // The named kernels ride along at the end.
  bool has_phi = false;
  FormulaPtr phi = paper_formula("phi_xy");
  for (uint64_t i = corpus.size() - 3; i < corpus.size(); ++i)
    has_phi |= ast_equal(corpus.at(i), phi);
  CHECK(has_phi);

  // Enumeration is stable and in-range.
  CHECK(ast_equal(corpus.at(100), corpus.at(100)));
  CHECK_THROWS_AS(corpus.at(corpus.size()), std::out_of_range);
}

TEST_CASE("metatheory: exhaustive tier reports zero violations at domain 1") {
  SuiteConfig cfg;
  cfg.max_domain = 1;  // the full tier runs in the acceptance suite
  SuiteReport report = run_exhaustive(cfg, EvalPath::Reference);
  CHECK(report.passed());
  const PropertyReport* persistency = report.find("persistency");
  REQUIRE(persistency != nullptr);
  CHECK(persistency->checked > 0);
  CHECK(persistency->violated == 0);
  CHECK(report.find("empty_team") != nullptr);
  CHECK(report.find("locality") != nullptr);
  CHECK(report.find("classical_flatness") != nullptr);
  CHECK(report.find("range_forall_equiv") != nullptr);
  CHECK(report.find("sentence_negation") != nullptr);
}

TEST_CASE("metatheory: randomized tier is seed-deterministic") {
  SuiteConfig cfg;
  cfg.sample_count = 150;
  cfg.random_seed = 99;
  SuiteReport a = run_randomized(cfg, 2);
  SuiteReport b = run_randomized(cfg, 4);  // worker count must not matter
  CHECK(a.passed());
  CHECK(b.passed());
  for (const auto& p : a.properties) {
    const PropertyReport* other = b.find(p.property);
    REQUIRE(other != nullptr);
    CHECK(other->checked == p.checked);
    CHECK(other->violated == p.violated);
  }
  CHECK_FALSE(a.table().empty());
}

TEST_CASE("metatheory: flatness probe separates flat from inquisitive formulas") {
  SuiteConfig cfg;

  // Classical formulas pass the bounded probe.
  CHECK(is_flat_up_to(forall("x", atom("P", {var("x")})), cfg).flat);
  CHECK(is_flat_up_to(implies(atom("P", {var("x")}), bottom()), cfg).flat);

  // lam y fails with a two-row witness.
  FlatnessResult lam = is_flat_up_to(value_question(var("y")), cfg);
  REQUIRE_FALSE(lam.flat);
  REQUIRE(lam.witness.has_value());
  CHECK(lam.witness->team.size() == 2);

  // ?P(x) fails on a team disagreeing about P.
  FlatnessResult q = is_flat_up_to(question(atom("P", {var("x")})), cfg);
  REQUIRE_FALSE(q.flat);
  REQUIRE(q.witness.has_value());
  CHECK(q.witness->team.size() == 2);

  // A question over an assignment-independent atom is (vacuously) flat:
  // ?P(c) never distinguishes rows, so the probe finds no witness.
  CHECK(is_flat_up_to(question(atom("P", {cnst("c")})), cfg).flat);
}

TEST_CASE("metatheory: counterexample minimization keeps the violation alive") {
  // Violation: the team has at least two distinct y-values.
  Team big = Team::make({"x", "y"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}});
  auto violates = [](const Team& t) {
    std::set<int> ys;
    for (const auto& row : t.rows) ys.insert(row[1]);
    return ys.size() >= 2;
  };
  Team minimal = minimize_counterexample(big, violates);
  CHECK(minimal.size() == 2);
  CHECK(violates(minimal));
}

TEST_CASE("metatheory: report merging accumulates by property") {
  SuiteReport a;
  a.property("p").checked = 3;
  SuiteReport b;
  b.property("p").checked = 4;
  b.property("p").violated = 1;
  b.property("q").checked = 1;
  a.merge(std::move(b));
  CHECK(a.property("p").checked == 7);
  CHECK(a.property("p").violated == 1);
  CHECK(a.property("q").checked == 1);
  CHECK_FALSE(a.passed());
}
