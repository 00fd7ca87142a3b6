#include <doctest.h>

#include <random>

#include "inqlab/constructions.hpp"
#include "inqlab/evaluator.hpp"
#include "inqlab/metatheory.hpp"

using namespace inqlab;

namespace {

Structure bare(int n) {
  Structure s;
  s.domain_size = n;
  return s;
}

Structure with_unary_p(int n, std::set<std::vector<int>> table) {
  Structure s;
  s.domain_size = n;
  s.sig.predicate("P", 1);
  s.predicates["P"] = std::move(table);
  return s;
}

}  // namespace

TEST_CASE("evaluator: tarski basics") {
  Structure m = bare(2);
  Assignment g{{"x", 1}, {"y", 1}};
  CHECK(tarski(m, g, equal(var("x"), var("y"))));
  g["y"] = 0;
  CHECK_FALSE(tarski(m, g, equal(var("x"), var("y"))));

  // forall x. exists y. x != y holds with two elements.
  FormulaPtr distinct = forall("x", cexists("y", not_equal(var("x"), var("y"))));
  CHECK(tarski(m, {}, distinct));
  CHECK_FALSE(tarski(bare(1), {}, distinct));

  CHECK(tarski(bare(1), {}, at_least_n(1)));
  CHECK_FALSE(tarski(bare(1), {}, at_least_n(2)));

  CHECK_THROWS_AS(tarski(m, g, idisj(bottom(), bottom())), EvalError);
  CHECK_THROWS_AS(tarski(m, {}, atom("P", {var("missing")})), EvalError);
}

TEST_CASE("evaluator: support clauses on small teams") {
  Structure m = with_unary_p(2, {{1}});
  Team empty = Team::empty({"x"});
  Team both = Team::maximal({"x"}, 2);
  Team ones = Team::make({"x"}, {{1}});

  // The empty team supports everything.
  for (const FormulaPtr& f :
       {bottom(), atom("P", {var("x")}), iexists("y", equal(var("x"), var("y"))),
        rangeall("y", question(equal(var("x"), var("y"))))})
    CHECK(supports(m, empty, f));

  CHECK_FALSE(supports(m, both, bottom()));
  CHECK(supports(m, ones, atom("P", {var("x")})));
  CHECK_FALSE(supports(m, both, atom("P", {var("x")})));

  // ior needs one side to hold on the whole team.
  FormulaPtr q = question(atom("P", {var("x")}));
  CHECK(supports(m, ones, q));
  CHECK_FALSE(supports(m, both, q));

  CHECK_THROWS_AS(supports(m, Team::unit(), atom("P", {var("x")})), EvalError);
}

TEST_CASE("evaluator: value questions test constancy") {
  Structure m = bare(3);
  FormulaPtr lam_y = value_question(var("y"));
  Team constant = Team::make({"x", "y"}, {{0, 2}, {1, 2}});
  Team varying = Team::make({"x", "y"}, {{0, 2}, {1, 1}});
  CHECK(supports(m, constant, lam_y));
  CHECK_FALSE(supports(m, varying, lam_y));
  CHECK(supports_fast(m, constant, lam_y));
  CHECK_FALSE(supports_fast(m, varying, lam_y));

  // Persistency by hand: a supported value question stays supported on
  // every sub-team.
  Team big = Team::make({"x", "y"}, {{0, 2}, {1, 2}, {2, 2}});
  REQUIRE(supports(m, big, lam_y));
  for (uint64_t mask = 0; mask < subteam_count(big); ++mask)
    CHECK(supports(m, subteam(big, mask), lam_y));
}

TEST_CASE("evaluator: dependence atoms read off functional columns") {
  Structure m = bare(3);
  FormulaPtr dep = dep_atom({var("x")}, var("y"));
  Team functional = Team::make({"x", "y"}, {{0, 1}, {1, 1}, {2, 0}});
  Team clashing = Team::make({"x", "y"}, {{0, 1}, {0, 2}});
  for (EvalPath path : {EvalPath::Reference, EvalPath::Fast}) {
    CHECK(supports_path(m, functional, dep, path));
    CHECK_FALSE(supports_path(m, clashing, dep, path));
  }

  // Mid-sized teams: cross-validate where the reference is still cheap, and
  // check the closed form beyond that.
  auto graph_team = [](int rows, int domain) {
    std::vector<std::vector<int>> data;
    for (int i = 0; i < rows; ++i) data.push_back({i, (i * 7 + 1) % domain});
    return Team::make({"x", "y"}, std::move(data));
  };
  Structure m10 = bare(10);
  Team ten = graph_team(10, 10);
  CHECK(supports(m10, ten, dep) == supports_fast(m10, ten, dep));
  Structure m12 = bare(12);
  Team twelve = graph_team(12, 12);
  CHECK(supports_fast(m12, twelve, dep));
  Team broken = Team::make({"x", "y"}, [&] {
    auto rows = twelve.rows;
    rows.push_back({0, 5});  // second y-value for x = 0
    return rows;
  }());
  CHECK_FALSE(supports_fast(m12, broken, dep));
}

TEST_CASE("evaluator: no sub-team falsifies the finiteness kernel on finite domains") {
  FormulaPtr phi = paper_formula("phi_xy");
  for (int n : {1, 2}) {
    Structure m = bare(n);
    TeamEnumerator teams({"x", "y"}, n);
    for (uint64_t mask = 0; mask < teams.count(); ++mask) {
      CAPTURE(n);
      CAPTURE(mask);
      REQUIRE(supports(m, teams.at(mask), phi));
    }
  }

  // Independent route: by exhaustive scan of the encoded relations, no
  // sub-team of the maximal team is an injective total non-surjective
  // function (pigeonhole on a finite set).
  for (int n : {2, 3}) {
    Team maximal = Team::maximal({"x", "y"}, n);
    for (uint64_t mask = 0; mask < subteam_count(maximal); ++mask) {
      DepProfile p = relation_profile(team_relation(subteam(maximal, mask), {"x", "y"}), n);
      const bool bad = p.is_function && p.is_injective && p.dom_is_full && !p.ran_is_full;
      CHECK_FALSE(bad);
    }
  }
}

TEST_CASE("evaluator: satisfaction of the finiteness sentence") {
  FormulaPtr psi = paper_formula("psi_finiteness");
  FormulaPtr neg = paper_formula("psi_neg_infinity");
  for (int n : {1, 2, 3}) {
    CAPTURE(n);
    CHECK(satisfies(bare(n), psi, {}, EvalPath::Reference));
    CHECK_FALSE(satisfies(bare(n), neg, {}, EvalPath::Reference));
  }
  // Fast path scales one size further.
  CHECK(satisfies(bare(4), psi, {}, EvalPath::Fast));
  CHECK_FALSE(satisfies(bare(4), neg, {}, EvalPath::Fast));

  CHECK_THROWS_AS(satisfies(bare(2), atom("P", {var("x")})), EvalError);

  // Negation behaves classically at sentence level.
  for (const FormulaPtr& sigma : {psi, at_least_n(2), at_least_n(3)}) {
    CHECK(satisfies(bare(2), lnot(sigma)) == !satisfies(bare(2), sigma));
  }
  CHECK_FALSE(satisfies(bare(2), at_least_n(3)));
}

TEST_CASE("evaluator: dep_profile matches the spec examples") {
  Structure m = bare(2);
  Team permutation = Team::make({"x", "y"}, {{0, 1}, {1, 0}});
  CHECK(dep_profile(m, permutation) == DepProfile{true, true, true, true});

  Team collapse = Team::make({"x", "y"}, {{0, 1}, {1, 1}});
  DepProfile p = dep_profile(m, collapse);
  CHECK(p.is_function);
  CHECK_FALSE(p.is_injective);

  CHECK_THROWS_AS(dep_profile(m, Team::make({"x"}, {{0}})), std::invalid_argument);
}

TEST_CASE("evaluator: dep_profile fields coincide with the four support facts") {
  // Exhaustive at |D| = 2 here; the acceptance suite adds |D| = 3.
  const int n = 2;
  Structure m = bare(n);
  FormulaPtr dep_xy = dep_atom({var("x")}, var("y"));
  FormulaPtr dep_yx = dep_atom({var("y")}, var("x"));
  FormulaPtr some_u = iexists("u", not_equal(var("u"), var("x")));
  FormulaPtr some_z = iexists("z", not_equal(var("z"), var("y")));
  TeamEnumerator teams({"x", "y"}, n);
  for (uint64_t mask = 0; mask < teams.count(); ++mask) {
    Team y = teams.at(mask);
    DepProfile p = dep_profile(m, y);
    CAPTURE(mask);
    CHECK(p.is_function == supports(m, y, dep_xy));
    CHECK(p.is_injective == supports(m, y, dep_yx));
    CHECK(p.dom_is_full == !supports(m, y, some_u));
    CHECK(p.ran_is_full == !supports(m, y, some_z));
  }
}

TEST_CASE("evaluator: falsifier search returns the least witness or nothing") {
  Structure m = bare(2);
  Team maximal = Team::maximal({"x", "y"}, 2);

  // Only the empty team supports bot, and it supports everything.
  CHECK_FALSE(find_falsifying_subteam(m, maximal, bottom(), atom("P", {var("x")})).has_value());

  // The finiteness kernel has no falsifier on a finite domain.
  FormulaPtr phi = paper_formula("phi_xy");
  CHECK_FALSE(
      find_falsifying_subteam(m, maximal, phi->left, phi->right).has_value());

  // Everything supports x = x; nothing nonempty supports bot: least mask wins.
  auto witness = find_falsifying_subteam(m, maximal, equal(var("x"), var("x")), bottom());
  REQUIRE(witness.has_value());
  CHECK(*witness == subteam(maximal, 1));

  // Absence of a falsifier is exactly support of the implication.
  FormulaPtr lam_y = value_question(var("y"));
  FormulaPtr lam_x = value_question(var("x"));
  for (uint64_t mask = 0; mask < 16; ++mask) {
    Team x = subteam(maximal, mask);
    CHECK(find_falsifying_subteam(m, x, lam_x, lam_y).has_value() ==
          !supports(m, x, implies(lam_x, lam_y)));
  }
}

TEST_CASE("evaluator: caps and precondition errors") {
  Structure m = bare(2);
  Team big = Team::maximal({"a", "b", "c", "d", "e"}, 2);  // 32 rows
  EvalConfig cfg;
  CHECK_THROWS_AS(supports(m, big, implies(bottom(), bottom()), cfg), CapExceeded);
  // A classical implication never forces the fast path to enumerate; an
  // inquisitive antecedent does.
  FormulaPtr inq = implies(idisj(equal(var("a"), var("a")), bottom()), bottom());
  CHECK(supports_fast(m, big, implies(bottom(), bottom()), cfg));
  CHECK_THROWS_AS(supports_fast(m, big, inq, cfg), CapExceeded);
  CHECK_THROWS_AS((void)find_falsifying_subteam(m, big, bottom(), bottom(), cfg),
                  std::length_error);

  // Raising the cap makes the same call legal.
  cfg.naive_subteam_cap = 40;
  CHECK_FALSE(supports_fast(m, big, inq, cfg));
}

TEST_CASE("evaluator: fast path agrees with the reference on a corpus slice") {
  SuiteConfig cfg;
  FormulaCorpus corpus(cfg);
  Signature sig = corpus.signature();
  StructureEnumerator structures(sig, 2);
  TeamEnumerator teams({"x", "y"}, 2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 4000; ++trial) {
    Structure m = structures.at(rng() % structures.count());
    Team x = teams.at(rng() % teams.count());
    FormulaPtr f = corpus.at(rng() % corpus.size());
    CAPTURE(trial);
    REQUIRE(supports(m, x, f) == supports_fast(m, x, f));
  }
}

TEST_CASE("evaluator: fast paths are exercised and the memo pays off") {
  Structure m = bare(3);
  EvalStats stats;
  CHECK(satisfies(m, paper_formula("psi_finiteness")));
  supports_fast(m, Team::maximal({"x", "y"}, 3), paper_formula("phi_xy"), {}, &stats);
  CHECK(stats.fast);
  CHECK(stats.pattern_shortcuts > 0);
  CHECK(stats.implication_masks > 0);

  // Disabling the shortcuts must not change verdicts.
  EvalConfig plain;
  plain.enable_fast_paths = false;
  Team varying = Team::make({"x", "y"}, {{0, 2}, {1, 1}});
  CHECK_FALSE(supports_fast(m, varying, value_question(var("y")), plain));
  CHECK(supports_fast(m, Team::make({"x", "y"}, {{0, 2}, {1, 2}}),
                      value_question(var("y")), plain));
}

TEST_CASE("evaluator: reference path satisfies the basic metatheory on a slice") {
  SuiteConfig cfg;
  FormulaCorpus corpus(cfg);
  StructureEnumerator structures(corpus.signature(), 2);
  TeamEnumerator teams({"x", "y"}, 2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Structure m = structures.at(rng() % structures.count());
    FormulaPtr f = corpus.at(rng() % corpus.size());
    uint64_t mask = rng() % teams.count();
    uint64_t sub = rng() & mask;
    // Persistency and empty-team support, straight from the reference clauses.
    if (supports(m, teams.at(mask), f)) CHECK(supports(m, teams.at(sub), f));
    CHECK(supports(m, teams.at(0), f));
  }
}
