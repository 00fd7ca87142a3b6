#include <doctest.h>

#include <random>

#include "inqlab/structures.hpp"

using namespace inqlab;

TEST_CASE("structures: team construction sorts, dedups and validates") {
  Team t = Team::make({"x", "y"}, {{1, 0}, {0, 1}, {1, 0}});
  CHECK(t.size() == 2);
  CHECK(t.rows[0] == std::vector<int>{0, 1});
  CHECK(t.rows[1] == std::vector<int>{1, 0});
  CHECK_THROWS_AS(Team::make({"x"}, {{0, 1}}), std::invalid_argument);

  // The empty team keeps its variable domain.
  Team e = Team::empty({"x", "y"});
  CHECK(e.size() == 0);
  CHECK(e.vars == std::vector<std::string>{"x", "y"});
}

TEST_CASE("structures: extend_const") {
  // Empty team stays empty.
  CHECK(extend_const(Team::empty({"y"}), "x", 1, 2).size() == 0);

  Team t = Team::make({"y"}, {{0}, {1}});
  Team extended = extend_const(t, "x", 1, 2);
  CHECK(extended == Team::make({"y", "x"}, {{0, 1}, {1, 1}}));

  // Overwriting an existing column can merge rows.
  Team collapse = extend_const(Team::make({"x"}, {{0}, {1}}), "x", 0, 2);
  CHECK(collapse == Team::make({"x"}, {{0}}));

  CHECK_THROWS_AS(extend_const(t, "x", 5, 2), std::invalid_argument);
}

TEST_CASE("structures: extend_all agrees with the union of constant extensions") {
  Team unit = Team::unit();
  Team two = extend_all(unit, "x", {0, 1}, 2);
  CHECK(two == Team::make({"x"}, {{0}, {1}}));
  CHECK(extend_all(Team::empty({"y"}), "x", {0, 1}, 2).size() == 0);

  // Chaining over the full domain reaches the maximal team.
  Team maximal = extend_full(extend_full(unit, "x", 2), "y", 2);
  CHECK(maximal == Team::maximal({"x", "y"}, 2));
  CHECK(maximal.size() == 4);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < 5; ++i) rows.push_back({int(rng() % 3), int(rng() % 3)});
    Team base = Team::make({"a", "b"}, std::move(rows));
    std::vector<int> values{0, 2};
    Team all = extend_all(base, "z", values, 3);
    std::set<std::vector<int>> expected;
    for (int v : values)
      for (const auto& row : extend_const(base, "z", v, 3).rows) expected.insert(row);
    CHECK(std::set<std::vector<int>>(all.rows.begin(), all.rows.end()) == expected);
  }
}

TEST_CASE("structures: restriction") {
  Team t = Team::make({"x", "y"}, {{0, 0}, {0, 1}});
  CHECK(restrict_team(t, {"x", "y"}) == t);
  CHECK(restrict_team(t, {"x"}) == Team::make({"x"}, {{0}}));
  CHECK_THROWS_AS(restrict_team(t, {"z"}), std::invalid_argument);
}

TEST_CASE("structures: team/relation correspondence") {
  Team t = Team::make({"x", "y"}, {{1, 2}, {3, 4}});
  Relation r = team_relation(t, {"x", "y"});
  CHECK(r.tuples == std::set<std::vector<int>>{{1, 2}, {3, 4}});
  CHECK(team_relation(Team::empty({"x", "y"}), {"x", "y"}).tuples.empty());
  CHECK_THROWS_AS(team_relation(t, {"z"}), std::invalid_argument);

  // Maximal team encodes the full square.
  Relation square = team_relation(Team::maximal({"x", "y"}, 2), {"x", "y"});
  CHECK(square.tuples.size() == 4);
  CHECK(relation_team(square, {"x", "y"}) == Team::maximal({"x", "y"}, 2));

  // Round trip on random relations.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Relation rel;
    rel.arity = 2;
    for (int i = 0; i < 6; ++i) rel.tuples.insert({int(rng() % 4), int(rng() % 4)});
    CHECK(team_relation(relation_team(rel, {"x", "y"}), {"x", "y"}) == rel);
  }
}

TEST_CASE("structures: sub-team enumeration") {
  Team two = Team::make({"x"}, {{0}, {1}});
  auto subs = subteams(two);
  REQUIRE(subs.size() == 4);
  CHECK(subs[0].size() == 0);
  CHECK(subs[3] == two);
  CHECK(subs[0].vars == two.vars);

  // |X| = 0: exactly the empty team.
  CHECK(subteams(Team::empty({"x"})).size() == 1);

  // |X| = 9 yields 512 distinct sub-teams.
  Team nine = Team::maximal({"x", "y"}, 3);
  auto all = subteams(nine);
  CHECK(all.size() == 512);
  std::set<std::vector<std::vector<int>>> distinct;
  for (const auto& s : all) distinct.insert(s.rows);
  CHECK(distinct.size() == 512);

  CHECK_THROWS_AS(subteam_count(Team::maximal({"x", "y", "z"}, 3), 20), std::length_error);
}

TEST_CASE("structures: structure enumeration counts") {
  Signature p1;
  p1.predicate("P", 1);
  CHECK(StructureEnumerator(p1, 2).count() == 4);  // 2^2 unary tables

  Signature empty_sig;
  CHECK(StructureEnumerator(empty_sig, 3).count() == 1);

  Signature with_const = p1;
  with_const.constant("c");
  StructureEnumerator e(with_const, 2);
  CHECK(e.count() == 8);  // 4 tables x 2 constant values
  std::set<std::pair<std::set<std::vector<int>>, int>> seen;
  for (uint64_t i = 0; i < e.count(); ++i) {
    Structure s = e.at(i);
    s.validate();
    seen.insert({s.predicates.at("P"), s.functions.at("c").at({})});
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("structures: team enumeration counts") {
  CHECK(TeamEnumerator({"x", "y"}, 2).count() == 16);   // 2^(2^2)
  CHECK(TeamEnumerator({"x", "y"}, 3).count() == 512);  // 2^(3^2)
  TeamEnumerator teams({"x", "y"}, 2);
  CHECK(teams.at(0).size() == 0);
  CHECK(teams.at(teams.count() - 1) == Team::maximal({"x", "y"}, 2));
  // Masks index rows of the maximal team, so sub-team = sub-mask.
  CHECK(teams.at(0b0011).rows == std::vector<std::vector<int>>{{0, 0}, {0, 1}});
}

TEST_CASE("structures: structure validation") {
  Structure s;
  s.domain_size = 2;
  s.sig.predicate("P", 1).constant("c");
  s.predicates["P"] = {{0}};
  s.functions["c"][{}] = 1;
  CHECK_NOTHROW(s.validate());

  Structure missing = s;
  missing.functions.clear();
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);

  Structure out_of_range = s;
  out_of_range.predicates["P"] = {{5}};
  CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);
}
