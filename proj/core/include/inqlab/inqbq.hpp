#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "inqlab/evaluator.hpp"
#include "inqlab/structures.hpp"
#include "inqlab/syntax.hpp"

namespace inqlab {

/// First-order information model: a family of structures over one individual
/// domain, indexed by worlds. Identity is meta-language identity (id-models);
/// the representation cannot express a world-dependent congruence.
struct InfoModel {
  int domain_size = 1;
  std::vector<Structure> worlds;

  int world_count() const { return static_cast<int>(worlds.size()); }
  const Signature& signature() const;
  /// Throws unless all worlds share the domain, signature and validity.
  void validate() const;
};

/// Information state: subset of worlds as a bit mask.
using StateMask = uint64_t;

StateMask full_state(const InfoModel& m);

/// World-relative term denotation.
int denote_at(const InfoModel& m, int world, const Assignment& g, const Term& t);

/// State-based support for InqBQ. A literal transcription of the clauses;
/// implication enumerates sub-states. The range quantifier [x] is not part
/// of the InqBQ language and is rejected.
bool state_supports(const InfoModel& m, StateMask s, const Assignment& g, const FormulaPtr& f,
                    const EvalConfig& cfg = {});

/// Support at the full state under the empty assignment (sentences only).
bool inqbq_satisfies(const InfoModel& m, const FormulaPtr& sentence, const EvalConfig& cfg = {});

/// R_s = {(a_w, b_w) | w in s} for the constants a, b.
Relation state_relation(const InfoModel& m, StateMask s);

/// Worlds indexed by pairs (i, j) over a domain of size n, with a naming the
/// first projection and b the second; the resulting model is full (R_W = D^2).
InfoModel build_full_model(int n);

/// Two-sorted relational encoding: every symbol gains a leading world slot.
struct TwoSortedStructure {
  int world_count = 1;
  int domain_size = 1;
  Signature sig;  // arities of the original signature; tables carry the extra world slot
  std::map<std::string, std::set<std::vector<int>>> predicates;
  std::map<std::string, std::map<std::vector<int>, int>> functions;

  friend bool operator==(const TwoSortedStructure& a, const TwoSortedStructure& b) {
    return a.world_count == b.world_count && a.domain_size == b.domain_size &&
           a.predicates == b.predicates && a.functions == b.functions;
  }
};

TwoSortedStructure encode_relational(const InfoModel& m);
InfoModel decode_relational(const TwoSortedStructure& s);

/// Classical two-sorted sentences over the encoded signature. World-sorted
/// terms are variables only; entity terms may apply lifted function symbols,
/// which take a world variable as their extra argument.
namespace fo2 {

enum class Sort { World, Entity };

struct Term {
  bool is_variable = true;
  std::string symbol;      // entity variable or lifted function symbol
  std::string world_var;   // world argument of an application
  std::vector<Term> args;  // entity arguments
};

Term evar(std::string name);
Term eapp(std::string function, std::string world_var, std::vector<Term> args = {});

enum class Kind { Atom, EqualE, Bottom, Not, And, Or, Implies, ForAll, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  std::string symbol;      // Atom: predicate; quantifier: bound variable
  std::string world_var;   // Atom: world argument
  Sort sort = Sort::Entity;  // quantifier sort
  std::vector<Term> terms;
  FormulaPtr left, right;
};

FormulaPtr atom(std::string predicate, std::string world_var, std::vector<Term> args = {});
FormulaPtr equal(Term lhs, Term rhs);
FormulaPtr bottom();
FormulaPtr lnot(FormulaPtr a);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(Sort sort, std::string v, FormulaPtr body);
FormulaPtr exists(Sort sort, std::string v, FormulaPtr body);

std::string to_string(const FormulaPtr& f);

}  // namespace fo2

/// Tarskian truth over the two-sorted structure; throws on sort errors,
/// unknown symbols, or unbound variables.
bool fo2_eval(const TwoSortedStructure& s, const fo2::FormulaPtr& sentence);

struct TranslationPair {
  std::string label;
  FormulaPtr inqbq;
  fo2::FormulaPtr classical;
};

/// The three worked translation rows over {P unary, constant a}:
/// P(a), ?P(a), and iexists x. P(x).
std::vector<TranslationPair> sample_translations();

/// All information models with the given world count and domain size over a
/// signature, as the product of per-world structure enumerations.
class InfoModelEnumerator {
 public:
  InfoModelEnumerator(Signature sig, int world_count, int domain_size,
                      uint64_t cap = uint64_t(1) << 32);
  uint64_t count() const { return count_; }
  InfoModel at(uint64_t index) const;

 private:
  StructureEnumerator worlds_;
  int world_count_;
  int domain_size_;
  uint64_t count_;
};

}  // namespace inqlab
