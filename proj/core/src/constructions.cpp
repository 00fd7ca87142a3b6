#include "inqlab/constructions.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace inqlab {

void CnfInstance::validate() const {
  if (variable_count <= 0) throw std::invalid_argument("cnf needs at least one variable");
  for (const auto& clause : clauses)
    for (const auto& lit : clause)
      if (lit.variable < 0 || lit.variable >= variable_count)
        throw std::invalid_argument("cnf literal outside variable range");
}

CnfInstance parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfInstance cnf;
  long declared_clauses = -1;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == '%') break;
    std::istringstream fields(line);
    if (line[0] == 'p') {
      std::string p, kind;
      fields >> p >> kind >> cnf.variable_count >> declared_clauses;
      if (kind != "cnf" || fields.fail())
        throw std::invalid_argument("dimacs: malformed problem line");
      continue;
    }
    int lit;
    while (fields >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          throw std::invalid_argument("dimacs: clause of width " +
                                      std::to_string(pending.size()) + " (exactly 3 required)");
        std::array<CnfLiteral, 3> clause;
        for (int i = 0; i < 3; ++i) clause[i] = {std::abs(pending[i]) - 1, pending[i] > 0};
        cnf.clauses.push_back(clause);
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (declared_clauses < 0) throw std::invalid_argument("dimacs: missing problem line");
  if (!pending.empty()) throw std::invalid_argument("dimacs: unterminated clause");
  if (static_cast<long>(cnf.clauses.size()) != declared_clauses)
    throw std::invalid_argument("dimacs: clause count does not match header");
  cnf.validate();
  return cnf;
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.variable_count << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (const auto& lit : clause) out << (lit.positive ? "" : "-") << lit.variable + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

bool eval_cnf(const CnfInstance& cnf, const std::vector<bool>& assignment) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (const auto& lit : clause)
      if (assignment[lit.variable] == lit.positive) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

bool sat_oracle(const CnfInstance& cnf) {
  cnf.validate();
  if (cnf.variable_count > 24)
    throw std::invalid_argument("sat_oracle handles at most 24 variables");
  const uint32_t limit = uint32_t(1) << cnf.variable_count;
  std::vector<bool> assignment(cnf.variable_count);
  for (uint32_t code = 0; code < limit; ++code) {
    for (int v = 0; v < cnf.variable_count; ++v) assignment[v] = (code >> v) & 1;
    if (eval_cnf(cnf, assignment)) return true;
  }
  return false;
}

namespace {

FormulaPtr phi_with(const Term& first, const Term& second) {
  // (dep(first; second) & dep(second; first) & iexists z. z != second)
  //   -> iexists u. u != first
  FormulaPtr antecedent =
      land(land(dep_atom({first}, second), dep_atom({second}, first)),
           iexists("z", not_equal(var("z"), second)));
  FormulaPtr consequent = iexists("u", not_equal(var("u"), first));
  return implies(std::move(antecedent), std::move(consequent));
}

FormulaPtr bounded_predecessors_formula() {
  auto leq = [](Term a, Term b) { return atom("leq", {std::move(a), std::move(b)}); };
  const Term x = var("x"), y = var("y"), z = var("z");
  FormulaPtr antecedent = conjoin({
      leq(x, z),
      leq(y, z),
      dep_atom({x}, y),
      dep_atom({y}, x),
      iexists("u", land(leq(var("u"), z), not_equal(var("u"), y))),
  });
  FormulaPtr consequent = iexists("t", land(leq(var("t"), z), not_equal(var("t"), x)));
  return forall("z",
                rangeall("x", rangeall("y", implies(std::move(antecedent), std::move(consequent)))));
}

}  // namespace

FormulaPtr paper_formula(const std::string& name) {
  if (name == "phi_xy") return phi_with(var("x"), var("y"));
  if (name == "psi_finiteness") return rangeall("x", rangeall("y", phi_with(var("x"), var("y"))));
  if (name == "psi_neg_infinity") return lnot(paper_formula("psi_finiteness"));
  if (name == "phi_ab") return phi_with(cnst("a"), cnst("b"));
  if (name == "bounded_predecessors") return bounded_predecessors_formula();
  if (name == "conp_phi")
    return implies(dep_atom({var("x")}, var("y")),
                   iexists("w", land(atom("C", {var("w")}), not_equal(var("w"), var("z")))));
  throw std::invalid_argument("unknown formula name '" + name + "'");
}

std::vector<std::string> paper_formula_names() {
  return {"phi_xy",  "psi_finiteness", "psi_neg_infinity",
          "phi_ab",  "bounded_predecessors", "conp_phi"};
}

Signature paper_formula_signature(const std::string& name) {
  Signature sig;
  if (name == "phi_ab") sig.constant("a").constant("b");
  else if (name == "bounded_predecessors") sig.predicate("leq", 2);
  else if (name == "conp_phi") sig.predicate("C", 1).predicate("V", 1);
  else if (name != "phi_xy" && name != "psi_finiteness" && name != "psi_neg_infinity")
    throw std::invalid_argument("unknown formula name '" + name + "'");
  return sig;
}

FormulaPtr at_least_n(int n) {
  if (n < 1) throw std::invalid_argument("at_least_n needs n >= 1");
  auto xi = [](int i) { return "x" + std::to_string(i); };
  FormulaPtr body;
  if (n == 1) {
    body = equal(var(xi(1)), var(xi(1)));
  } else {
    std::vector<FormulaPtr> distinct;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) distinct.push_back(not_equal(var(xi(i)), var(xi(j))));
    body = conjoin(std::move(distinct));
  }
  for (int i = n; i >= 1; --i) body = cexists(xi(i), std::move(body));
  return body;
}

ReductionOutput encode_3sat(const CnfInstance& cnf) {
  cnf.validate();
  if (cnf.clauses.empty()) throw std::invalid_argument("encode_3sat needs at least one clause");
  ReductionOutput out;
  const int m = static_cast<int>(cnf.clauses.size());
  out.clause_block = 0;
  out.position_block = m;
  out.variable_block = m + 3;
  out.parity_block = m + 3 + cnf.variable_count;

  Structure s;
  s.domain_size = out.parity_block + 2;
  s.sig.predicate("C", 1).predicate("V", 1);
  auto& c_table = s.predicates["C"];
  for (int i = 0; i < m; ++i) c_table.insert({out.clause_element(i)});
  auto& v_table = s.predicates["V"];
  for (int v = 0; v < cnf.variable_count; ++v) v_table.insert({out.variable_element(v)});
  s.validate();
  out.structure = std::move(s);

  std::vector<std::vector<int>> rows;
  rows.reserve(3 * cnf.clauses.size());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 3; ++j) {
      const CnfLiteral& lit = cnf.clauses[i][j];
      rows.push_back({out.clause_element(i), out.position_block + j,
                      out.variable_element(lit.variable), out.parity_element(lit.positive)});
    }
  }
  out.team = Team::make({"z", "u", "x", "y"}, std::move(rows));
  out.formula = paper_formula("conp_phi");
  return out;
}

std::map<int, bool> extract_assignment(const ReductionOutput& reduction, const Team& y) {
  auto xcol = y.var_index("x");
  auto ycol = y.var_index("y");
  if (!xcol || !ycol) throw std::invalid_argument("extract_assignment: team lacks x or y");
  std::map<int, bool> out;
  for (const auto& row : y.rows) {
    const int element = row[*xcol];
    const int variable = element - reduction.variable_block;
    const bool value = row[*ycol] == reduction.parity_element(true);
    auto [it, inserted] = out.emplace(variable, value);
    if (!inserted && it->second != value)
      throw std::invalid_argument("extract_assignment: sub-team violates dep(x;y)");
  }
  return out;
}

std::vector<CnfInstance> reduction_instance_set(size_t min_count) {
  std::vector<CnfInstance> out;
  auto lit = [](int v, bool pos) { return CnfLiteral{v, pos}; };
  auto inst = [&](int vars, std::vector<std::array<CnfLiteral, 3>> clauses) {
    CnfInstance c;
    c.variable_count = vars;
    c.clauses = std::move(clauses);
    c.validate();
    out.push_back(std::move(c));
  };

  // Degenerate shapes: a single repeated positive literal, the matching
  // all-negative clause, and their unsatisfiable conjunction.
  inst(1, {{{lit(0, true), lit(0, true), lit(0, true)}}});
  inst(1, {{{lit(0, false), lit(0, false), lit(0, false)}}});
  inst(1, {{{lit(0, true), lit(0, true), lit(0, true)}},
           {{lit(0, false), lit(0, false), lit(0, false)}}});
  // All-positive and all-negative multi-variable instances.
  inst(3, {{{lit(0, true), lit(1, true), lit(2, true)}},
           {{lit(0, true), lit(0, true), lit(1, true)}},
           {{lit(2, true), lit(2, true), lit(2, true)}}});
  inst(3, {{{lit(0, false), lit(1, false), lit(2, false)}},
           {{lit(0, false), lit(0, false), lit(1, false)}},
           {{lit(2, false), lit(2, false), lit(2, false)}}});
  // Unsatisfiable 2-variable core: all four sign patterns over (p, q).
  inst(2, {{{lit(0, true), lit(0, true), lit(1, true)}},
           {{lit(0, true), lit(0, true), lit(1, false)}},
           {{lit(0, false), lit(0, false), lit(1, true)}},
           {{lit(0, false), lit(0, false), lit(1, false)}}});

  // Seeded pseudo-random fill; the engine and the draw rule are fixed, so the
  // set is identical on every run.
  std::mt19937_64 rng(0x1ab5eedULL);
  auto draw = [&](int n) { return static_cast<int>(rng() % n); };
  while (out.size() < min_count) {
    CnfInstance c;
    c.variable_count = 1 + draw(3);
    const int clauses = 1 + draw(4);
    for (int i = 0; i < clauses; ++i) {
      std::array<CnfLiteral, 3> clause;
      for (int j = 0; j < 3; ++j) clause[j] = {draw(c.variable_count), draw(2) == 1};
      c.clauses.push_back(clause);
    }
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace inqlab
