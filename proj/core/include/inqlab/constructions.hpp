#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "inqlab/structures.hpp"
#include "inqlab/syntax.hpp"

namespace inqlab {

struct CnfLiteral {
  int variable = 0;  // 0-based
  bool positive = true;

  friend bool operator==(const CnfLiteral&, const CnfLiteral&) = default;
};

/// 3-CNF instance: every clause has exactly three literals (repetitions
/// allowed), variable indices below variable_count.
struct CnfInstance {
  int variable_count = 0;
  std::vector<std::array<CnfLiteral, 3>> clauses;

  void validate() const;
};

/// DIMACS cnf reader; clauses of width other than three are rejected.
CnfInstance parse_dimacs(const std::string& text);
std::string to_dimacs(const CnfInstance& cnf);

bool eval_cnf(const CnfInstance& cnf, const std::vector<bool>& assignment);

/// Brute force over all assignments; the independent check the team-level
/// reduction is validated against. Limited to 24 variables.
bool sat_oracle(const CnfInstance& cnf);

/// Named formulas used by the diagnostics and the demo commands:
///   phi_xy               (dep(x;y) & dep(y;x) & iexists z. z != y) -> iexists u. u != x
///   psi_finiteness       [x][y] phi_xy
///   psi_neg_infinity     ~psi_finiteness
///   phi_ab               phi_xy with x, y replaced by the constants a, b
///   bounded_predecessors the [x][y] kernel relativized below z over a linear order leq
///   conp_phi             dep(x;y) -> iexists w. (C(w) & w != z)
FormulaPtr paper_formula(const std::string& name);
std::vector<std::string> paper_formula_names();
/// Vocabulary each named formula is written in (empty for phi_xy and the
/// psi variants).
Signature paper_formula_signature(const std::string& name);

/// Classical sentence asserting at least n distinct objects.
FormulaPtr at_least_n(int n);

/// Team-and-structure encoding of a 3-CNF instance. The team ranges over
/// (z, u, x, y) = (clause, position, variable, parity); V marks variable
/// elements, C marks clause elements; all four element blocks are disjoint.
/// The structure-and-team pair supports `formula` iff the instance is
/// unsatisfiable.
struct ReductionOutput {
  Structure structure;
  Team team;
  FormulaPtr formula;  // conp_phi
  // Element block offsets inside the domain.
  int clause_block = 0;
  int position_block = 0;
  int variable_block = 0;
  int parity_block = 0;

  int clause_element(int clause) const { return clause_block + clause; }
  int variable_element(int variable) const { return variable_block + variable; }
  int parity_element(bool positive) const { return parity_block + (positive ? 1 : 0); }
};

ReductionOutput encode_3sat(const CnfInstance& cnf);

/// Reads the partial Boolean assignment off a sub-team: variable of x-column
/// maps to true iff the paired y-column value is the positive parity.
/// Keys are CNF variable indices. Throws if the rows are not x-functional.
std::map<int, bool> extract_assignment(const ReductionOutput& reduction, const Team& y);

/// Deterministic battery of small instances (at most 3 variables, 4 clauses)
/// including the degenerate all-positive and all-negative ones.
std::vector<CnfInstance> reduction_instance_set(size_t min_count = 200);

}  // namespace inqlab
