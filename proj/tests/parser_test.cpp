#include <doctest.h>

#include "inqlab/constructions.hpp"
#include "inqlab/metatheory.hpp"
#include "inqlab/parser.hpp"

using namespace inqlab;

namespace {

Signature pq_sig() {
  Signature sig;
  sig.predicate("P", 1).predicate("Q", 2).constant("c");
  return sig;
}

}  // namespace

TEST_CASE("parser: keywords and atoms") {
  Signature sig = pq_sig();
  CHECK(ast_equal(parse("bot", sig), bottom()));
  CHECK(ast_equal(parse("P(c)", sig), atom("P", {cnst("c")})));

  // 0-ary predicates parse bare or with empty parentheses and render bare.
  Signature prop_sig;
  prop_sig.predicate("R", 0);
  CHECK(ast_equal(parse("R & R()", prop_sig), land(atom("R"), atom("R"))));
  CHECK(render(atom("R")) == "R");
  CHECK(ast_equal(parse("x = y", sig), equal(var("x"), var("y"))));
  CHECK(ast_equal(parse("x != y", sig), not_equal(var("x"), var("y"))));
  CHECK(ast_equal(parse("lam y", sig), value_question(var("y"))));
  CHECK(ast_equal(parse("dep(x;y)", sig), dep_atom({var("x")}, var("y"))));
  CHECK(ast_equal(parse("dep(x,z;y)", sig), dep_atom({var("x"), var("z")}, var("y"))));
}

TEST_CASE("parser: the value-question spelling from the grammar") {
  // forall x. ?(x = y) is exactly lam y up to the bound-variable name.
  Signature sig;
  FormulaPtr parsed = parse("forall x. ?(x = y)", sig);
  FormulaPtr eq = equal(var("x"), var("y"));
  CHECK(ast_equal(parsed, forall("x", idisj(eq, implies(eq, bottom())))));
}

TEST_CASE("parser: precedence and associativity") {
  Signature sig = pq_sig();
  FormulaPtr p = atom("P", {var("x")});
  FormulaPtr q = atom("P", {var("y")});
  FormulaPtr r = atom("P", {cnst("c")});

  CHECK(ast_equal(parse("P(x) & P(y) & P(c)", sig), land(land(p, q), r)));
  CHECK(ast_equal(parse("P(x) -> P(y) -> P(c)", sig), implies(p, implies(q, r))));
  CHECK(ast_equal(parse("P(x) ior P(y) & P(c)", sig), idisj(p, land(q, r))));
  CHECK(ast_equal(parse("P(x) & P(y) -> P(c)", sig), implies(land(p, q), r)));
  CHECK(ast_equal(parse("P(x) | P(y)", sig), cor(p, q)));
  CHECK(ast_equal(parse("~P(x) & P(y)", sig), land(lnot(p), q)));
  CHECK(ast_equal(parse("?P(x) ior P(y)", sig), idisj(question(p), q)));

  // Quantifier bodies are unary-level; wider scope needs parentheses.
  CHECK(ast_equal(parse("forall x. P(x) & P(y)", sig), land(forall("x", p), q)));
  CHECK(ast_equal(parse("forall x. (P(x) & P(y))", sig), forall("x", land(p, q))));
  CHECK(ast_equal(parse("iexists z. z != y -> P(x)", sig),
                  implies(iexists("z", not_equal(var("z"), var("y"))), p)));
  CHECK(ast_equal(parse("[x][y]Q(x,y)", sig),
                  rangeall("x", rangeall("y", atom("Q", {var("x"), var("y")})))));
  CHECK(ast_equal(parse("exists x. P(x)", sig), cexists("x", p)));
}

TEST_CASE("parser: the finiteness sentence round-trips through the grammar") {
  Signature sig;
  FormulaPtr parsed = parse(
      "[x][y](dep(x;y) & dep(y;x) & iexists z. z != y -> iexists u. u != x)", sig);
  CHECK(ast_equal(parsed, paper_formula("psi_finiteness")));
}

TEST_CASE("parser: errors carry line and column") {
  Signature sig = pq_sig();

  CHECK_THROWS_AS(parse("P(x", sig), ParseError);
  CHECK_THROWS_AS(parse("", sig), ParseError);
  CHECK_THROWS_AS(parse("P(x) &", sig), ParseError);
  CHECK_THROWS_AS(parse("R(x)", sig), ParseError);    // unknown symbol
  CHECK_THROWS_AS(parse("P(x,y)", sig), ParseError);  // arity mismatch
  CHECK_THROWS_AS(parse("Q(x)", sig), ParseError);
  CHECK_THROWS_AS(parse("forall P. bot", sig), ParseError);  // shadowing bound var

  try {
    parse("P(x) &\n& P(y)", sig);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
    CHECK(e.span().start == 7);
  }
}

TEST_CASE("parser: render emits core operators with minimal parentheses") {
  CHECK(render(bottom()) == "bot");
  FormulaPtr p = atom("P", {var("x")});
  FormulaPtr q = atom("Q", {var("x"), var("y")});
  CHECK(render(land(p, q)) == "P(x) & Q(x,y)");
  CHECK(render(implies(implies(p, q), p)) == "(P(x) -> Q(x,y)) -> P(x)");
  CHECK(render(implies(p, implies(q, p))) == "P(x) -> Q(x,y) -> P(x)");
  CHECK(render(land(p, land(q, p))) == "P(x) & (Q(x,y) & P(x))");
  CHECK(render(idisj(land(p, q), p)) == "P(x) & Q(x,y) ior P(x)");
  CHECK(render(forall("x", land(p, q))) == "forall x. (P(x) & Q(x,y))");
  CHECK(render(land(forall("x", p), q)) == "forall x. P(x) & Q(x,y)");
  CHECK(render(rangeall("x", rangeall("y", q))) == "[x][y]Q(x,y)");
}

TEST_CASE("parser: round-trip on the named formulas") {
  for (const auto& name : paper_formula_names()) {
    CAPTURE(name);
    FormulaPtr f = paper_formula(name);
    Signature sig = paper_formula_signature(name);
    CHECK(ast_equal(parse(render(f), sig), f));
  }
}

TEST_CASE("parser: round-trip on a corpus slice") {
  SuiteConfig cfg;
  cfg.max_formula_depth = 3;
  FormulaCorpus corpus(cfg);
  Signature sig = corpus.signature();
  // Deterministic stride; the acceptance suite walks the whole corpus.
  for (uint64_t i = 0; i < corpus.size(); i += 997) {
    FormulaPtr f = corpus.at(i);
    CAPTURE(i);
    REQUIRE(ast_equal(parse(render(f), sig), f));
  }
}
