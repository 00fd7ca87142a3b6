#include "inqlab/metatheory.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

#include "inqlab/constructions.hpp"

namespace inqlab {

// ---------------------------------------------------------------------------
// Formula corpus
// ---------------------------------------------------------------------------

FormulaCorpus::FormulaCorpus(const SuiteConfig& cfg) {
  sig_.predicate("P", 1).predicate("Q", 2).constant("c");
  static const std::vector<std::string> kVarPool = {"x", "y", "z", "u", "w"};
  if (cfg.max_vars < 1 || cfg.max_vars > static_cast<int>(kVarPool.size()))
    throw std::invalid_argument("max_vars outside supported range");
  vars_.assign(kVarPool.begin(), kVarPool.begin() + cfg.max_vars);
  for (const auto& v : vars_) terms_.push_back(var(v));
  terms_.push_back(cnst("c"));

  level1_.push_back(bottom());
  for (const Term& t : terms_) level1_.push_back(atom("P", {t}));
  for (const Term& t1 : terms_)
    for (const Term& t2 : terms_) level1_.push_back(atom("Q", {t1, t2}));
  for (const Term& t1 : terms_)
    for (const Term& t2 : terms_) level1_.push_back(equal(t1, t2));

  if (cfg.max_formula_depth < 1) throw std::invalid_argument("max_formula_depth must be >= 1");
  exact_.assign(cfg.max_formula_depth + 1, 0);
  cumulative_.assign(cfg.max_formula_depth + 1, 0);
  exact_[1] = level1_.size();
  cumulative_[1] = level1_.size();
  for (int d = 2; d <= cfg.max_formula_depth; ++d) {
    const uint64_t newer = exact_[d - 1];
    const uint64_t all = cumulative_[d - 1];
    const uint64_t older = cumulative_[d - 2 >= 1 ? d - 2 : 0];
    const uint64_t pairs = newer * all + older * newer;  // at least one side of depth d-1
    exact_[d] = 3 * pairs + 3 * vars_.size() * newer;
    cumulative_[d] = cumulative_[d - 1] + exact_[d];
  }

  for (const auto& name : {"phi_xy", "psi_finiteness", "psi_neg_infinity"})
    named_.push_back(paper_formula(name));
  total_ = cumulative_[cfg.max_formula_depth] + named_.size();
}

FormulaPtr FormulaCorpus::build_cumulative(int max_level, uint64_t index) const {
  for (int d = 1; d <= max_level; ++d) {
    if (index < exact_[d]) return build(d, index);
    index -= exact_[d];
  }
  throw std::out_of_range("corpus index");
}

FormulaPtr FormulaCorpus::build(int level, uint64_t index) const {
  if (level == 1) return level1_[index];
  const uint64_t newer = exact_[level - 1];
  const uint64_t all = cumulative_[level - 1];
  const uint64_t older = level >= 3 ? cumulative_[level - 2] : 0;
  const uint64_t pairs = newer * all + older * newer;

  if (index < 3 * pairs) {
    const int conn = static_cast<int>(index / pairs);
    uint64_t pair = index % pairs;
    FormulaPtr lhs, rhs;
    if (pair < newer * all) {
      lhs = build(level - 1, pair / all);
      rhs = build_cumulative(level - 1, pair % all);
    } else {
      pair -= newer * all;
      lhs = build_cumulative(level - 2, pair / newer);
      rhs = build(level - 1, pair % newer);
    }
    switch (conn) {
      case 0: return land(std::move(lhs), std::move(rhs));
      case 1: return idisj(std::move(lhs), std::move(rhs));
      default: return implies(std::move(lhs), std::move(rhs));
    }
  }
  index -= 3 * pairs;
  const uint64_t per_quantifier = vars_.size() * newer;
  const int quantifier = static_cast<int>(index / per_quantifier);
  index %= per_quantifier;
  const std::string& v = vars_[index / newer];
  FormulaPtr body = build(level - 1, index % newer);
  switch (quantifier) {
    case 0: return forall(v, std::move(body));
    case 1: return iexists(v, std::move(body));
    default: return rangeall(v, std::move(body));
  }
}

FormulaPtr FormulaCorpus::at(uint64_t index) const {
  if (index >= total_) throw std::out_of_range("corpus index");
  const uint64_t enumerated = total_ - named_.size();
  if (index >= enumerated) return named_[index - enumerated];
  return build_cumulative(static_cast<int>(exact_.size()) - 1, index);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyReport& p) { return p.violated == 0; });
}

PropertyReport& SuiteReport::property(const std::string& name) {
  for (auto& p : properties)
    if (p.property == name) return p;
  properties.push_back({name, 0, 0, {}});
  return properties.back();
}

const PropertyReport* SuiteReport::find(const std::string& name) const {
  for (const auto& p : properties)
    if (p.property == name) return &p;
  return nullptr;
}

void SuiteReport::merge(SuiteReport&& other) {
  for (auto& p : other.properties) {
    PropertyReport& mine = property(p.property);
    mine.checked += p.checked;
    mine.violated += p.violated;
    for (auto& c : p.counterexamples) mine.counterexamples.push_back(std::move(c));
  }
}

std::string SuiteReport::table() const {
  std::ostringstream out;
  size_t width = 8;
  for (const auto& p : properties) width = std::max(width, p.property.size());
  out << std::string(width, ' ') << "  checked     violated\n";
  for (const auto& p : properties) {
    out << p.property << std::string(width - p.property.size(), ' ') << "  ";
    std::string checked = std::to_string(p.checked);
    out << checked << std::string(checked.size() < 10 ? 10 - checked.size() : 1, ' ') << "  "
        << p.violated << "\n";
  }
  return out.str();
}

Team minimize_counterexample(const Team& team, const std::function<bool(const Team&)>& violates) {
  Team current = team;
  bool changed = true;
  while (changed && current.size() > 0) {
    changed = false;
    for (size_t drop = 0; drop < current.size(); ++drop) {
      std::vector<std::vector<int>> rows;
      rows.reserve(current.size() - 1);
      for (size_t i = 0; i < current.size(); ++i)
        if (i != drop) rows.push_back(current.rows[i]);
      Team candidate = Team::make(current.vars, std::move(rows));
      if (violates(candidate)) {  // re-check: the violation must survive
        current = std::move(candidate);
        changed = true;
        break;
      }
    }
  }
  return current;
}

// ---------------------------------------------------------------------------
// Suite plumbing
// ---------------------------------------------------------------------------

namespace {

constexpr size_t kMaxCounterexamples = 10;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

/// Runs fn(task, local_report) over 0..task_count-1 on a worker pool and
/// merges the local reports; counterexamples are re-sorted by task index so
/// the merged report does not depend on scheduling.
template <typename Fn>
SuiteReport run_tasks(uint64_t task_count, int workers, Fn fn) {
  workers = static_cast<int>(
      std::min<uint64_t>(resolve_workers(workers), std::max<uint64_t>(task_count, 1)));
  std::vector<SuiteReport> locals(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (uint64_t task = w; task < task_count; task += workers) fn(task, locals[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  SuiteReport merged;
  for (auto& local : locals) merged.merge(std::move(local));
  for (auto& p : merged.properties) {
    std::sort(p.counterexamples.begin(), p.counterexamples.end(),
              [](const Counterexample& a, const Counterexample& b) { return a.task < b.task; });
    if (p.counterexamples.size() > kMaxCounterexamples)
      p.counterexamples.resize(kMaxCounterexamples);
  }
  return merged;
}

void record(PropertyReport& report, uint64_t task, const Structure& m, Team team,
            const FormulaPtr& f, std::string detail,
            const std::function<bool(const Team&)>& violates) {
  ++report.violated;
  if (report.counterexamples.size() >= kMaxCounterexamples) return;
  Team minimized = violates ? minimize_counterexample(team, violates) : std::move(team);
  report.counterexamples.push_back({task, m, std::move(minimized), f, std::move(detail)});
}

/// Exhaustive-tier task list: all structures over the suite signature with
/// domain size 1..max_domain.
struct TierContext {
  const SuiteConfig& cfg;
  FormulaCorpus corpus;
  std::vector<Structure> structures;
  std::vector<TeamEnumerator> teams_by_domain;  // indexed by domain size

  explicit TierContext(const SuiteConfig& cfg) : cfg(cfg), corpus(cfg) {
    teams_by_domain.reserve(cfg.max_domain + 1);
    for (int n = 0; n <= cfg.max_domain; ++n)
      teams_by_domain.emplace_back(corpus.variables(), std::max(n, 1));
    for (int n = 1; n <= cfg.max_domain; ++n) {
      StructureEnumerator e(corpus.signature(), n);
      for (uint64_t i = 0; i < e.count(); ++i) structures.push_back(e.at(i));
    }
  }
};

bool pointwise_tarski(const Structure& m, const Team& x, const FormulaPtr& classical) {
  for (size_t i = 0; i < x.size(); ++i)
    if (!tarski(m, x.assignment(i), classical)) return false;
  return true;
}

FormulaPtr universal_closure(const FormulaPtr& f) {
  FormulaPtr closed = f;
  for (const auto& v : free_vars(*f)) closed = forall(v, closed);
  return closed;
}

// Property checks shared by both tiers. Each returns true when the instance
// holds; callers count and record violations.

bool persistency_holds(const Structure& m, const Team& x, const Team& y, const FormulaPtr& f,
                       EvalPath path, const EvalConfig& ecfg) {
  if (!supports_path(m, x, f, path, ecfg)) return true;
  return supports_path(m, y, f, path, ecfg);
}

/// Dummy-variable extension for the locality check. The full extension
/// multiplies rows, so past a row bound that would trip the implication cap
/// it degrades to a constant column (still a valid locality instance).
Team locality_extension(const Team& x, int domain_size) {
  if (x.size() * domain_size <= 16) return extend_full(x, "aux", domain_size);
  return extend_const(x, "aux", 0, domain_size);
}

bool locality_holds(const Structure& m, const Team& x, const FormulaPtr& f, SupportSession& session) {
  const bool verdict = session.eval(x);
  if (session.eval(restrict_team(x, free_vars(*f))) != verdict) return false;
  return session.eval(locality_extension(x, m.domain_size)) == verdict;
}

}  // namespace

SuiteReport check_persistency(const SuiteConfig& cfg, EvalPath path, int workers) {
  TierContext ctx(cfg);
  const EvalConfig ecfg;
  return run_tasks(ctx.structures.size(), workers, [&](uint64_t task, SuiteReport& out) {
    const Structure& m = ctx.structures[task];
    const TeamEnumerator& teams = ctx.teams_by_domain[m.domain_size];
    PropertyReport& report = out.property("persistency");
    std::vector<bool> verdict(teams.count());
    for (uint64_t i = 0; i < ctx.corpus.size(); ++i) {
      FormulaPtr f = ctx.corpus.at(i);
      SupportSession session(m, f, path, ecfg);
      for (uint64_t mask = 0; mask < teams.count(); ++mask)
        verdict[mask] = session.eval(teams.at(mask));
      for (uint64_t mask = 0; mask < teams.count(); ++mask) {
        if (!verdict[mask]) continue;
        // Sub-teams are exactly the sub-masks.
        for (uint64_t sub = mask;; sub = (sub - 1) & mask) {
          ++report.checked;
          if (!verdict[sub]) {
            auto violates = [&](const Team& t) {
              return supports_path(m, teams.at(mask), f, path, ecfg) &&
                     !supports_path(m, t, f, path, ecfg);
            };
            record(report, task, m, teams.at(sub), f,
                   "supported team has an unsupported sub-team", violates);
          }
          if (sub == 0) break;
        }
      }
    }
  });
}

SuiteReport check_empty_locality_flatness(const SuiteConfig& cfg, EvalPath path, int workers) {
  TierContext ctx(cfg);
  const EvalConfig ecfg;
  return run_tasks(ctx.structures.size(), workers, [&](uint64_t task, SuiteReport& out) {
    const Structure& m = ctx.structures[task];
    const TeamEnumerator& teams = ctx.teams_by_domain[m.domain_size];
    PropertyReport& empty = out.property("empty_team");
    PropertyReport& locality = out.property("locality");
    PropertyReport& flatness = out.property("classical_flatness");
    for (uint64_t i = 0; i < ctx.corpus.size(); ++i) {
      FormulaPtr f = ctx.corpus.at(i);
      SupportSession session(m, f, path, ecfg);
      ++empty.checked;
      if (!session.eval(teams.at(0)))
        record(empty, task, m, teams.at(0), f, "empty team fails to support", nullptr);
      const bool classical = is_classical(*f);
      for (uint64_t mask = 0; mask < teams.count(); ++mask) {
        Team x = teams.at(mask);
        ++locality.checked;
        if (!locality_holds(m, x, f, session))
          record(locality, task, m, x, f, "verdict changed under restriction/extension", nullptr);
        if (classical) {
          ++flatness.checked;
          if (session.eval(x) != pointwise_tarski(m, x, f)) {
            auto violates = [&](const Team& t) {
              return supports_path(m, t, f, path, ecfg) != pointwise_tarski(m, t, f);
            };
            record(flatness, task, m, x, f, "classical formula is not flat here", violates);
          }
        }
      }
    }
  });
}

SuiteReport check_range_forall_equiv(const SuiteConfig& cfg, EvalPath path, int workers) {
  TierContext ctx(cfg);
  const EvalConfig ecfg;
  return run_tasks(ctx.structures.size(), workers, [&](uint64_t task, SuiteReport& out) {
    const Structure& m = ctx.structures[task];
    const TeamEnumerator& teams = ctx.teams_by_domain[m.domain_size];
    PropertyReport& report = out.property("range_forall_equiv");
    for (uint64_t i = 0; i < ctx.corpus.size(); ++i) {
      FormulaPtr f = ctx.corpus.at(i);
      if (!no_inquisitive_ops(*f)) continue;  // the equivalence is claimed ior/iexists-free only
      for (const auto& v : ctx.corpus.variables()) {
        FormulaPtr ranged = rangeall(v, f);
        FormulaPtr pointed = forall(v, f);
        SupportSession ranged_session(m, ranged, path, ecfg);
        SupportSession pointed_session(m, pointed, path, ecfg);
        for (uint64_t mask = 0; mask < teams.count(); ++mask) {
          Team x = teams.at(mask);
          ++report.checked;
          if (ranged_session.eval(x) != pointed_session.eval(x))
            record(report, task, m, x, ranged, "[x] and forall disagree", nullptr);
        }
      }
    }
  });
}

SuiteReport check_sentence_negation(const SuiteConfig& cfg, EvalPath path, int workers) {
  TierContext ctx(cfg);
  const EvalConfig ecfg;
  return run_tasks(ctx.structures.size(), workers, [&](uint64_t task, SuiteReport& out) {
    const Structure& m = ctx.structures[task];
    PropertyReport& report = out.property("sentence_negation");
    for (uint64_t i = 0; i < ctx.corpus.size(); ++i) {
      FormulaPtr sentence = universal_closure(ctx.corpus.at(i));
      ++report.checked;
      const bool pos = supports_path(m, Team::unit(), sentence, path, ecfg);
      const bool neg = supports_path(m, Team::unit(), lnot(sentence), path, ecfg);
      if (neg == pos)
        record(report, task, m, Team::unit(), sentence,
               "negation does not flip satisfaction", nullptr);
    }
  });
}

SuiteReport run_exhaustive(const SuiteConfig& cfg, EvalPath path, int workers) {
  SuiteReport report = check_persistency(cfg, path, workers);
  report.merge(check_empty_locality_flatness(cfg, path, workers));
  report.merge(check_range_forall_equiv(cfg, path, workers));
  report.merge(check_sentence_negation(cfg, path, workers));
  return report;
}

// ---------------------------------------------------------------------------
// Randomized tier
// ---------------------------------------------------------------------------

namespace {

/// Engine output is reduced with plain modulo; std::uniform_int_distribution
/// is implementation-defined and would break cross-platform determinism.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(uint64_t seed) : engine(seed) {}
  uint64_t below(uint64_t n) { return engine() % n; }
};

Structure random_structure(Rng& rng, const Signature& sig, int n) {
  StructureEnumerator e(sig, n);
  return e.at(rng.below(e.count()));
}

}  // namespace

SuiteReport run_randomized(const SuiteConfig& cfg, int workers) {
  FormulaCorpus corpus(cfg);
  const int n = kRandomTierDomain;
  const TeamEnumerator teams(corpus.variables(), n);
  const EvalConfig ecfg;
  const EvalPath path = EvalPath::Fast;

  return run_tasks(cfg.sample_count, workers, [&](uint64_t task, SuiteReport& out) {
    // Per-task seed derived from the global seed; draws are independent of
    // the worker layout.
    Rng rng(cfg.random_seed ^ (0x9e3779b97f4a7c15ULL * (task + 1)));
    const Structure m = random_structure(rng, corpus.signature(), n);
    const FormulaPtr f = corpus.at(rng.below(corpus.size()));
    const uint64_t mask = rng.below(teams.count());
    const uint64_t submask = rng.engine() & mask;  // uniform sub-team
    Team x = teams.at(mask);
    Team y = teams.at(submask);

    PropertyReport& persistency = out.property("persistency");
    ++persistency.checked;
    if (!persistency_holds(m, x, y, f, path, ecfg))
      record(persistency, task, m, y, f, "supported team has an unsupported sub-team", nullptr);

    PropertyReport& empty = out.property("empty_team");
    ++empty.checked;
    if (!supports_path(m, teams.at(0), f, path, ecfg))
      record(empty, task, m, teams.at(0), f, "empty team fails to support", nullptr);

    PropertyReport& locality = out.property("locality");
    ++locality.checked;
    SupportSession session(m, f, path, ecfg);
    if (!locality_holds(m, x, f, session))
      record(locality, task, m, x, f, "verdict changed under restriction/extension", nullptr);

    if (is_classical(*f)) {
      PropertyReport& flatness = out.property("classical_flatness");
      ++flatness.checked;
      if (supports_path(m, x, f, path, ecfg) != pointwise_tarski(m, x, f))
        record(flatness, task, m, x, f, "classical formula is not flat here", nullptr);
    }

    if (no_inquisitive_ops(*f)) {
      PropertyReport& range = out.property("range_forall_equiv");
      const std::string& v = corpus.variables()[rng.below(corpus.variables().size())];
      ++range.checked;
      if (supports_path(m, x, rangeall(v, f), path, ecfg) !=
          supports_path(m, x, forall(v, f), path, ecfg))
        record(range, task, m, x, rangeall(v, f), "[x] and forall disagree", nullptr);
    }

    PropertyReport& negation = out.property("sentence_negation");
    FormulaPtr sentence = universal_closure(f);
    ++negation.checked;
    const bool pos = supports_path(m, Team::unit(), sentence, path, ecfg);
    const bool neg = supports_path(m, Team::unit(), lnot(sentence), path, ecfg);
    if (neg == pos)
      record(negation, task, m, Team::unit(), sentence, "negation does not flip satisfaction",
             nullptr);
  });
}

FlatnessResult is_flat_up_to(const FormulaPtr& f, const SuiteConfig& cfg, EvalPath path) {
  FormulaCorpus corpus(cfg);
  const EvalConfig ecfg;
  Signature sig = corpus.signature();
  uint64_t task = 0;
  for (int n = 1; n <= cfg.max_domain; ++n) {
    StructureEnumerator structures(sig, n);
    TeamEnumerator teams(corpus.variables(), n);
    for (uint64_t si = 0; si < structures.count(); ++si) {
      const Structure m = structures.at(si);
      for (uint64_t mask = 0; mask < teams.count(); ++mask, ++task) {
        Team x = teams.at(mask);
        auto violates = [&](const Team& t) {
          bool team_verdict = supports_path(m, t, f, path, ecfg);
          bool pointwise = true;
          for (uint64_t i = 0; i < t.size() && pointwise; ++i) {
            Team singleton = Team::make(t.vars, {t.rows[i]});
            pointwise = supports_path(m, singleton, f, path, ecfg);
          }
          return team_verdict != pointwise;
        };
        if (violates(x)) {
          Counterexample witness{task, m, minimize_counterexample(x, violates), f,
                                 "support does not reduce to singletons"};
          return {false, std::move(witness)};
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace inqlab
