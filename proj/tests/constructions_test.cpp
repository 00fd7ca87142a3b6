#include <doctest.h>

#include "inqlab/constructions.hpp"
#include "inqlab/evaluator.hpp"
#include "inqlab/parser.hpp"

using namespace inqlab;

namespace {

CnfInstance single_positive() {
  CnfInstance c;
  c.variable_count = 1;
  c.clauses = {{{{0, true}, {0, true}, {0, true}}}};
  return c;
}

CnfInstance contradiction() {
  CnfInstance c = single_positive();
  c.clauses.push_back({{{0, false}, {0, false}, {0, false}}});
  return c;
}

Structure linear_order(int n) {
  Structure s;
  s.domain_size = n;
  s.sig.predicate("leq", 2);
  auto& table = s.predicates["leq"];
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) table.insert({i, j});
  return s;
}

}  // namespace

TEST_CASE("constructions: named formulas have the expected shape") {
  FormulaPtr phi = paper_formula("phi_xy");
  CHECK(free_vars(*phi) == std::set<std::string>{"x", "y"});
  CHECK(is_inqbt(*phi));

  FormulaPtr psi = paper_formula("psi_finiteness");
  CHECK(is_sentence(psi));
  CHECK_FALSE(is_inqbt(*psi));  // carries the range quantifier
  CHECK(ast_equal(psi, rangeall("x", rangeall("y", phi))));
  CHECK(ast_equal(paper_formula("psi_neg_infinity"), lnot(psi)));

  FormulaPtr ab = paper_formula("phi_ab");
  CHECK(is_sentence(ab));
  CHECK(free_vars(*ab).empty());

  CHECK(is_sentence(paper_formula("bounded_predecessors")));
  CHECK(free_vars(*paper_formula("conp_phi")) == std::set<std::string>{"x", "y", "z"});

  CHECK_THROWS_AS(paper_formula("nope"), std::invalid_argument);

  for (const auto& name : paper_formula_names())
    CHECK(well_formed(paper_formula(name), paper_formula_signature(name)).empty());
}

TEST_CASE("constructions: at_least_n characterizes domain size") {
  for (int n = 1; n <= 4; ++n) {
    FormulaPtr f = at_least_n(n);
    CHECK(is_classical(*f));
    CHECK(is_sentence(f));
    for (int d = 1; d <= 5; ++d) {
      Structure m;
      m.domain_size = d;
      CAPTURE(n);
      CAPTURE(d);
      CHECK(satisfies(m, f) == (d >= n));
    }
  }
  CHECK_THROWS_AS(at_least_n(0), std::invalid_argument);
}

TEST_CASE("constructions: dimacs reader") {
  CnfInstance c = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  CHECK(c.variable_count == 3);
  REQUIRE(c.clauses.size() == 2);
  CHECK(c.clauses[0][1].variable == 1);
  CHECK_FALSE(c.clauses[0][1].positive);

  // Clauses may span lines; width other than 3 is rejected.
  CHECK(parse_dimacs("p cnf 2 1\n1 2\n-1 0\n").clauses.size() == 1);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 1 2 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 2 0\n"), std::invalid_argument);

  // Round trip through the writer.
  CnfInstance again = parse_dimacs(to_dimacs(c));
  CHECK(again.clauses.size() == c.clauses.size());
  CHECK(again.clauses[1][2].variable == c.clauses[1][2].variable);
}

TEST_CASE("constructions: sat oracle on the degenerate instances") {
  CHECK(sat_oracle(single_positive()));
  CHECK_FALSE(sat_oracle(contradiction()));

  // A found witness must satisfy the instance clause by clause.
  CnfInstance c;
  c.variable_count = 3;
  c.clauses = {{{{0, true}, {1, false}, {2, true}}}, {{{0, false}, {1, true}, {2, true}}}};
  REQUIRE(sat_oracle(c));
  bool witnessed = false;
  for (uint32_t code = 0; code < 8 && !witnessed; ++code) {
    std::vector<bool> g{bool(code & 1), bool(code & 2), bool(code & 4)};
    witnessed = eval_cnf(c, g);
  }
  CHECK(witnessed);
}

TEST_CASE("constructions: the reduction layout keeps element blocks disjoint") {
  CnfInstance c = contradiction();
  ReductionOutput r = encode_3sat(c);
  CHECK(r.structure.domain_size == 2 + 3 + 1 + 2);
  CHECK(r.team.vars == std::vector<std::string>{"z", "u", "x", "y"});
  CHECK(r.team.size() == 6);  // three rows per clause, here all distinct
  // V holds exactly of proposition elements, C exactly of clause indices.
  CHECK(r.structure.predicates.at("V") ==
        std::set<std::vector<int>>{{r.variable_element(0)}});
  CHECK(r.structure.predicates.at("C") ==
        std::set<std::vector<int>>{{r.clause_element(0)}, {r.clause_element(1)}});

  // Duplicate literals inside one clause still contribute their three rows,
  // distinct through the position column.
  ReductionOutput one = encode_3sat(single_positive());
  CHECK(one.team.size() == 3);
}

TEST_CASE("constructions: reduction verdict mirrors unsatisfiability") {
  // Unsatisfiable instance: the formula is supported.
  ReductionOutput uns = encode_3sat(contradiction());
  CHECK(supports(uns.structure, uns.team, uns.formula));

  // Satisfiable instance: refuted, and the least falsifier encodes a
  // satisfying assignment.
  ReductionOutput sat = encode_3sat(single_positive());
  CHECK_FALSE(supports(sat.structure, sat.team, sat.formula));
  REQUIRE(sat.formula->kind == Conn::Implies);
  auto witness =
      find_falsifying_subteam(sat.structure, sat.team, sat.formula->left, sat.formula->right);
  REQUIRE(witness.has_value());
  auto f = extract_assignment(sat, *witness);
  REQUIRE(f.count(0) == 1);
  CHECK(f.at(0) == true);
}

TEST_CASE("constructions: extraction is defined exactly on dep(x;y) sub-teams") {
  ReductionOutput r = encode_3sat(contradiction());
  CHECK(extract_assignment(r, Team::empty(r.team.vars)).empty());

  Team single = Team::make(r.team.vars, {r.team.rows[0]});
  auto f = extract_assignment(r, single);
  CHECK(f.size() == 1);

  // Both parities of the same variable: dep(x;y) is violated.
  CHECK_THROWS_AS(extract_assignment(r, r.team), std::invalid_argument);

  // Any clause-covering dep sub-team of a satisfiable instance extracts a
  // satisfying assignment, whatever its total extension.
  CnfInstance c;
  c.variable_count = 2;
  c.clauses = {{{{0, true}, {0, true}, {1, true}}}, {{{0, false}, {1, true}, {1, true}}}};
  REQUIRE(sat_oracle(c));
  ReductionOutput enc = encode_3sat(c);
  auto witness =
      find_falsifying_subteam(enc.structure, enc.team, enc.formula->left, enc.formula->right);
  REQUIRE(witness.has_value());
  auto partial = extract_assignment(enc, *witness);
  for (int bits = 0; bits < 4; ++bits) {
    std::vector<bool> total{bool(bits & 1), bool(bits & 2)};
    bool compatible = true;
    for (const auto& [v, value] : partial) compatible &= total[v] == value;
    if (compatible) CHECK(eval_cnf(c, total));
  }
}

TEST_CASE("constructions: deterministic instance battery") {
  auto instances = reduction_instance_set(200);
  CHECK(instances.size() >= 200);
  // Deterministic across calls.
  auto again = reduction_instance_set(200);
  REQUIRE(instances.size() == again.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    CHECK(instances[i].variable_count == again[i].variable_count);
    CHECK(instances[i].clauses.size() == again[i].clauses.size());
  }
  // Bounds: at most 3 variables and 4 clauses each.
  bool has_all_positive = false, has_all_negative = false;
  for (const auto& c : instances) {
    CHECK(c.variable_count <= 3);
    CHECK(c.clauses.size() <= 4);
    bool all_pos = true, all_neg = true;
    for (const auto& clause : c.clauses)
      for (const auto& lit : clause) (lit.positive ? all_neg : all_pos) = false;
    has_all_positive |= all_pos;
    has_all_negative |= all_neg;
  }
  CHECK(has_all_positive);
  CHECK(has_all_negative);
}

TEST_CASE("constructions: bounded predecessors kernel on tiny linear orders") {
  FormulaPtr f = paper_formula("bounded_predecessors");
  for (int n : {1, 2}) {
    CAPTURE(n);
    CHECK(satisfies(linear_order(n), f, {}, EvalPath::Fast));
  }
}
