#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "inqlab/structures.hpp"
#include "inqlab/syntax.hpp"

namespace inqlab {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an implication (or sub-state) node would have to enumerate
/// more sub-teams than the configured cap allows.
class CapExceeded : public EvalError {
 public:
  using EvalError::EvalError;
};

struct EvalConfig {
  /// Row count above which sub-team enumeration refuses to run.
  int naive_subteam_cap = 20;
  /// Pattern and flatness shortcuts in the optimized evaluator.
  bool enable_fast_paths = true;
  /// Approximate byte budget for the optimized evaluator's memo table; when
  /// exhausted the evaluator keeps recomputing instead of caching.
  size_t memo_limit = size_t(64) << 20;
};

enum class EvalPath { Reference, Fast };

struct EvalStats {
  uint64_t implication_masks = 0;
  uint64_t memo_hits = 0;
  uint64_t memo_entries = 0;
  uint64_t flat_shortcuts = 0;
  uint64_t pattern_shortcuts = 0;
  bool fast = false;
};

/// Standard Tarskian truth for the classical fragment.
/// Throws EvalError on a non-classical formula or a missing free variable.
bool tarski(const Structure& m, const Assignment& g, const Formula& f);
bool tarski(const Structure& m, const Assignment& g, const FormulaPtr& f);

/// Term denotation relative to an assignment.
int denote(const Structure& m, const Assignment& g, const Term& t);

/// Reference support evaluator: a literal transcription of the support
/// clauses. Implication enumerates every sub-team; quantifiers rebuild
/// extended teams. This is the oracle the optimized path is checked against.
bool supports(const Structure& m, const Team& x, const FormulaPtr& f, const EvalConfig& cfg = {},
              EvalStats* stats = nullptr);

/// Optimized support evaluator; agrees with `supports` on all inputs.
/// Shortcuts: per-row Tarskian evaluation for formulas without inquisitive
/// operators (rewriting [x]a to forall x. a), closed-form checks for ?a,
/// value questions and dependence implications, a locality-keyed memo table,
/// and consequent-persistency pruning in implication nodes.
bool supports_fast(const Structure& m, const Team& x, const FormulaPtr& f,
                   const EvalConfig& cfg = {}, EvalStats* stats = nullptr);

bool supports_path(const Structure& m, const Team& x, const FormulaPtr& f, EvalPath path,
                   const EvalConfig& cfg = {}, EvalStats* stats = nullptr);

/// Reusable evaluation session for one structure and formula. On the fast
/// path the memo table survives across eval() calls, which is sound because
/// its keys only mention the team restricted to each sub-formula's free
/// variables. Verdicts are identical to the per-call entry points.
class SupportSession {
 public:
  SupportSession(const Structure& m, FormulaPtr f, EvalPath path, EvalConfig cfg = {});
  SupportSession(SupportSession&&) noexcept;
  SupportSession& operator=(SupportSession&&) noexcept;
  ~SupportSession();

  bool eval(const Team& x);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Sentence satisfaction: support over the unit team. Throws on open formulas.
bool satisfies(const Structure& m, const FormulaPtr& sentence, const EvalConfig& cfg = {},
               EvalPath path = EvalPath::Fast);

/// Shape of the binary relation encoded by a team's (x, y) columns.
struct DepProfile {
  bool is_function = false;
  bool is_injective = false;
  bool dom_is_full = false;
  bool ran_is_full = false;

  friend bool operator==(const DepProfile&, const DepProfile&) = default;
};

DepProfile relation_profile(const Relation& r, int domain_size);
DepProfile dep_profile(const Structure& m, const Team& y, const std::string& x = "x",
                       const std::string& yvar = "y");

/// First sub-team (in increasing mask order) supporting `antecedent` but not
/// `consequent`, or nullopt when none exists; nullopt iff the team supports
/// the implication.
std::optional<Team> find_falsifying_subteam(const Structure& m, const Team& x,
                                            const FormulaPtr& antecedent,
                                            const FormulaPtr& consequent,
                                            const EvalConfig& cfg = {});

}  // namespace inqlab
