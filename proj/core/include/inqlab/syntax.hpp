#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace inqlab {

/// First-order vocabulary. Arity-0 functions act as constant symbols.
/// The identity symbol "=" is built in and never appears in the maps.
struct Signature {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;

  Signature& predicate(std::string name, int arity);
  Signature& function(std::string name, int arity);
  Signature& constant(std::string name) { return function(std::move(name), 0); }

  bool has_predicate(const std::string& name) const { return predicates.count(name) != 0; }
  bool has_function(const std::string& name) const { return functions.count(name) != 0; }
  bool has_symbol(const std::string& name) const { return has_predicate(name) || has_function(name); }
};

struct Term {
  bool is_variable = true;
  std::string symbol;
  std::vector<Term> args;  // empty for variables and constants

  friend bool operator==(const Term&, const Term&) = default;
};

Term var(std::string name);
Term app(std::string function, std::vector<Term> args = {});
inline Term cnst(std::string name) { return app(std::move(name)); }

void collect_term_vars(const Term& t, std::set<std::string>& out);
std::set<std::string> term_vars(const Term& t);

/// Core connectives. Everything else (negation, classical disjunction and
/// existential, question mark, value questions, dependence atoms) desugars
/// into these on construction.
enum class Conn {
  Atom,      // P(t1,...,tn)
  Equal,     // t1 = t2
  Bottom,    // bot
  And,       // conjunction
  IDisj,     // inquisitive disjunction
  Implies,   // (intuitionistic / support) implication
  ForAll,    // constant-value universal
  IExists,   // inquisitive existential
  RangeAll,  // range-generating universal [x]
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Conn kind;
  std::string symbol;       // Atom: predicate name; quantifiers: bound variable
  std::vector<Term> terms;  // Atom: arguments; Equal: exactly {lhs, rhs}
  FormulaPtr left;          // binary: left operand; quantifier: body
  FormulaPtr right;         // binary: right operand
};

FormulaPtr atom(std::string predicate, std::vector<Term> args = {});
FormulaPtr equal(Term lhs, Term rhs);
FormulaPtr bottom();
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr idisj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(std::string v, FormulaPtr body);
FormulaPtr iexists(std::string v, FormulaPtr body);
FormulaPtr rangeall(std::string v, FormulaPtr body);

bool ast_equal(const Formula& a, const Formula& b);
bool ast_equal(const FormulaPtr& a, const FormulaPtr& b);

// Derived operators, desugared on construction.
FormulaPtr lnot(FormulaPtr a);                       // a -> bot
FormulaPtr cor(FormulaPtr a, FormulaPtr b);          // ~(~a & ~b)
FormulaPtr liff(FormulaPtr a, FormulaPtr b);         // (a -> b) & (b -> a)
FormulaPtr cexists(std::string v, FormulaPtr body);  // ~forall v. ~body
FormulaPtr question(FormulaPtr a);                   // a ior ~a
FormulaPtr value_question(Term t);                   // forall v. ?(v = t), v fresh for t
FormulaPtr dep_atom(std::vector<Term> determinants, Term determined);
FormulaPtr not_equal(Term lhs, Term rhs);

/// Left fold of a nonempty conjunct list.
FormulaPtr conjoin(std::vector<FormulaPtr> conjuncts);

/// Surface representation of a derived operator, for callers that build
/// sugar forms before committing to a core formula.
struct DerivedForm {
  enum class Tag { Not, COr, Iff, CExists, QuestionMark, ValueQuestion, DepAtom };
  Tag tag;
  std::vector<FormulaPtr> formulas;  // Not/QuestionMark: 1; COr/Iff: 2; CExists: 1
  std::vector<Term> terms;           // ValueQuestion: 1; DepAtom: determinants + determined last
  std::string variable;             // CExists bound variable
};

FormulaPtr desugar(const DerivedForm& d);
/// Core formulas carry no sugar, so desugaring one is the identity.
FormulaPtr desugar(const FormulaPtr& f);

/// Least name of the shape v0, v1, ... not contained in `taken`.
std::string fresh_variable(const std::set<std::string>& taken);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const FormulaPtr& f);
/// Free and bound variables together.
std::set<std::string> all_vars(const Formula& f);

struct Diagnostic {
  std::string path;  // slash-separated position in the AST, "" for the root
  std::string message;
};

/// Arity checking plus bound-variable legality against a signature.
/// Empty result means the formula is well formed.
std::vector<Diagnostic> well_formed(const FormulaPtr& f, const Signature& sig);

// Language membership predicates. A formula carries no language tag; these
// classify the single shared AST.
bool is_classical(const Formula& f);        // no ior, iexists, [x]
bool is_classical(const FormulaPtr& f);
bool no_inquisitive_ops(const Formula& f);  // no ior, iexists ([x] allowed)
bool no_inquisitive_ops(const FormulaPtr& f);
bool is_inqbt(const Formula& f);            // no [x]
bool is_inqbt(const FormulaPtr& f);
bool is_sentence(const FormulaPtr& f);

}  // namespace inqlab
