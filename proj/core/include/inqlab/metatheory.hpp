#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "inqlab/evaluator.hpp"
#include "inqlab/structures.hpp"
#include "inqlab/syntax.hpp"

namespace inqlab {

struct SuiteConfig {
  int max_domain = 2;
  int max_vars = 2;
  int max_formula_depth = 2;
  uint64_t random_seed = 0x5eed5eedULL;
  int sample_count = 10000;
};

/// Domain size the randomized tier runs at.
inline constexpr int kRandomTierDomain = 3;

/// Deterministic enumeration of core formulas over the small suite signature
/// {P unary, Q binary, constant c}, by depth (atoms and bot have depth 1),
/// with the named empty-signature formulas appended at the end. Indexed
/// access keeps deep corpora streamable.
class FormulaCorpus {
 public:
  explicit FormulaCorpus(const SuiteConfig& cfg);

  uint64_t size() const { return total_; }
  FormulaPtr at(uint64_t index) const;
  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& variables() const { return vars_; }

 private:
  FormulaPtr build(int level, uint64_t index) const;
  FormulaPtr build_cumulative(int max_level, uint64_t index) const;

  Signature sig_;
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
  std::vector<FormulaPtr> level1_;
  std::vector<uint64_t> exact_;       // exact_[d] = formulas of depth exactly d
  std::vector<uint64_t> cumulative_;  // cumulative_[d] = formulas of depth <= d
  std::vector<FormulaPtr> named_;
  uint64_t total_ = 0;
};

struct Counterexample {
  uint64_t task = 0;  // position in the deterministic task order
  Structure model;
  Team team;
  FormulaPtr formula;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  uint64_t checked = 0;
  uint64_t violated = 0;
  std::vector<Counterexample> counterexamples;
};

struct SuiteReport {
  // Deque: property() hands out references that must survive later additions.
  std::deque<PropertyReport> properties;

  bool passed() const;
  PropertyReport& property(const std::string& name);
  const PropertyReport* find(const std::string& name) const;
  void merge(SuiteReport&& other);
  /// Human-readable table.
  std::string table() const;
};

/// Removes rows one at a time while the violation predicate stays true;
/// the result still violates and no single further removal does.
Team minimize_counterexample(const Team& team, const std::function<bool(const Team&)>& violates);

/// Exhaustive tier: every structure with domain up to cfg.max_domain over the
/// suite signature, every team over the suite variables, every corpus formula.
SuiteReport check_persistency(const SuiteConfig& cfg, EvalPath path = EvalPath::Reference,
                              int workers = 0);
SuiteReport check_empty_locality_flatness(const SuiteConfig& cfg,
                                          EvalPath path = EvalPath::Reference, int workers = 0);
SuiteReport check_range_forall_equiv(const SuiteConfig& cfg, EvalPath path = EvalPath::Reference,
                                     int workers = 0);
SuiteReport check_sentence_negation(const SuiteConfig& cfg, EvalPath path = EvalPath::Reference,
                                    int workers = 0);
/// All six properties on the exhaustive tier.
SuiteReport run_exhaustive(const SuiteConfig& cfg, EvalPath path = EvalPath::Reference,
                           int workers = 0);
/// All six properties on seeded random draws at |D| = 3 (fast evaluator).
SuiteReport run_randomized(const SuiteConfig& cfg, int workers = 0);

struct FlatnessResult {
  bool flat = true;  // no violation within the configured bounds
  std::optional<Counterexample> witness;
};

/// Bounded flatness probe: scans structures and teams within cfg bounds for a
/// violation of the singleton biconditional; a positive answer is evidence,
/// not a proof.
FlatnessResult is_flat_up_to(const FormulaPtr& f, const SuiteConfig& cfg,
                             EvalPath path = EvalPath::Reference);

}  // namespace inqlab
