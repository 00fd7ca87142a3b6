#include "inqlab/evaluator.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <unordered_map>

namespace inqlab {

namespace {

constexpr int kMaskWidth = 62;

int effective_cap(const EvalConfig& cfg) { return std::min(cfg.naive_subteam_cap, kMaskWidth); }

[[noreturn]] void missing_var(const std::string& v) {
  throw EvalError("assignment does not cover variable '" + v + "'");
}

}  // namespace

int denote(const Structure& m, const Assignment& g, const Term& t) {
  if (t.is_variable) {
    auto it = g.find(t.symbol);
    if (it == g.end()) missing_var(t.symbol);
    return it->second;
  }
  auto table = m.functions.find(t.symbol);
  if (table == m.functions.end()) throw EvalError("no table for function '" + t.symbol + "'");
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(denote(m, g, a));
  auto row = table->second.find(args);
  if (row == table->second.end()) throw EvalError("function table for '" + t.symbol + "' not total");
  return row->second;
}

namespace {

bool atom_true(const Structure& m, const Assignment& g, const Formula& f) {
  if (f.kind == Conn::Equal) return denote(m, g, f.terms[0]) == denote(m, g, f.terms[1]);
  std::vector<int> tuple;
  tuple.reserve(f.terms.size());
  for (const Term& t : f.terms) tuple.push_back(denote(m, g, t));
  auto table = m.predicates.find(f.symbol);
  if (table == m.predicates.end()) return false;  // absent table = empty relation
  return table->second.count(tuple) != 0;
}

}  // namespace

bool tarski(const Structure& m, const Assignment& g, const Formula& f) {
  switch (f.kind) {
    case Conn::Atom:
    case Conn::Equal:
      return atom_true(m, g, f);
    case Conn::Bottom:
      return false;
    case Conn::And:
      return tarski(m, g, *f.left) && tarski(m, g, *f.right);
    case Conn::Implies:
      return !tarski(m, g, *f.left) || tarski(m, g, *f.right);
    case Conn::ForAll: {
      Assignment h = g;
      for (int d = 0; d < m.domain_size; ++d) {
        h[f.symbol] = d;
        if (!tarski(m, h, *f.left)) return false;
      }
      return true;
    }
    case Conn::IDisj:
    case Conn::IExists:
    case Conn::RangeAll:
      throw EvalError("tarski evaluation applies to classical formulas only");
  }
  throw std::logic_error("unreachable connective");
}

bool tarski(const Structure& m, const Assignment& g, const FormulaPtr& f) {
  return tarski(m, g, *f);
}

// ---------------------------------------------------------------------------
// Reference evaluator: each support clause transcribed literally.
// ---------------------------------------------------------------------------

namespace {

class RefEval {
 public:
  RefEval(const Structure& m, const EvalConfig& cfg, EvalStats* stats)
      : m_(m), cfg_(cfg), stats_(stats) {}

  bool eval(const Team& x, const Formula& f) {
    switch (f.kind) {
      case Conn::Atom:
      case Conn::Equal:
        for (size_t i = 0; i < x.size(); ++i)
          if (!atom_true(m_, x.assignment(i), f)) return false;
        return true;
      case Conn::Bottom:
        return x.size() == 0;
      case Conn::And:
        return eval(x, *f.left) && eval(x, *f.right);
      case Conn::IDisj:
        return eval(x, *f.left) || eval(x, *f.right);
      case Conn::Implies: {
        if (static_cast<int>(x.size()) > effective_cap(cfg_))
          throw CapExceeded("implication over " + std::to_string(x.size()) +
                            " rows exceeds cap " + std::to_string(effective_cap(cfg_)));
        const uint64_t n = uint64_t(1) << x.size();
        for (uint64_t mask = 0; mask < n; ++mask) {
          if (stats_) ++stats_->implication_masks;
          Team y = subteam(x, mask);
          if (eval(y, *f.left) && !eval(y, *f.right)) return false;
        }
        return true;
      }
      case Conn::ForAll:
        for (int d = 0; d < m_.domain_size; ++d)
          if (!eval(extend_const(x, f.symbol, d, m_.domain_size), *f.left)) return false;
        return true;
      case Conn::IExists:
        for (int d = 0; d < m_.domain_size; ++d)
          if (eval(extend_const(x, f.symbol, d, m_.domain_size), *f.left)) return true;
        return false;
      case Conn::RangeAll:
        return eval(extend_full(x, f.symbol, m_.domain_size), *f.left);
    }
    throw std::logic_error("unreachable connective");
  }

 private:
  const Structure& m_;
  const EvalConfig& cfg_;
  EvalStats* stats_;
};

void check_team_covers(const Team& x, const FormulaPtr& f) {
  for (const auto& v : free_vars(*f))
    if (!x.var_index(v))
      throw EvalError("free variable '" + v + "' is not in the team's domain");
}

// ---------------------------------------------------------------------------
// Optimized evaluator.
//
// Works over views (base team + row mask + constant-column overrides) so
// quantifier and implication clauses avoid materializing teams. Overriding a
// column that already exists can make virtual rows coincide; support is a
// property of the row set, so the duplicates are harmless.
// ---------------------------------------------------------------------------

struct View {
  const Team* base;
  bool all_rows = true;
  uint64_t mask = 0;  // meaningful when !all_rows
  std::vector<std::pair<std::string, int>> overrides;

  size_t active_rows() const {
    return all_rows ? base->size() : static_cast<size_t>(std::popcount(mask));
  }
};

/// Rewrites [x]a to forall x. a; valid for formulas free of ior/iexists.
FormulaPtr to_classical(const Formula& f) {
  switch (f.kind) {
    case Conn::Atom:
    case Conn::Equal: {
      auto copy = std::make_shared<Formula>(f);
      return copy;
    }
    case Conn::Bottom:
      return bottom();
    case Conn::And:
      return land(to_classical(*f.left), to_classical(*f.right));
    case Conn::Implies:
      return implies(to_classical(*f.left), to_classical(*f.right));
    case Conn::ForAll:
    case Conn::RangeAll:
      return forall(f.symbol, to_classical(*f.left));
    case Conn::IDisj:
    case Conn::IExists:
      throw std::logic_error("to_classical on an inquisitive formula");
  }
  throw std::logic_error("unreachable connective");
}

/// Recognizes the desugared value question forall v. ((v = t) ior ((v = t) -> bot)).
std::optional<Term> match_value_question(const Formula& f) {
  if (f.kind != Conn::ForAll) return std::nullopt;
  const Formula& body = *f.left;
  if (body.kind != Conn::IDisj) return std::nullopt;
  const Formula& eq = *body.left;
  if (eq.kind != Conn::Equal) return std::nullopt;
  if (!eq.terms[0].is_variable || eq.terms[0].symbol != f.symbol) return std::nullopt;
  const Term& t = eq.terms[1];
  if (term_vars(t).count(f.symbol)) return std::nullopt;
  const Formula& neg = *body.right;
  if (neg.kind != Conn::Implies || neg.right->kind != Conn::Bottom) return std::nullopt;
  if (!ast_equal(*neg.left, eq)) return std::nullopt;
  return t;
}

/// Recognizes a ior (a -> bot), the question mark over a.
const Formula* match_question(const Formula& f) {
  if (f.kind != Conn::IDisj) return nullptr;
  const Formula& neg = *f.right;
  if (neg.kind != Conn::Implies || neg.right->kind != Conn::Bottom) return nullptr;
  if (!ast_equal(*f.left, *neg.left)) return nullptr;
  return f.left.get();
}

struct DepPattern {
  std::vector<Term> determinants;
  Term determined;
};

/// Recognizes (lam t1 & ... & lam tn) -> lam u, the dependence implication.
std::optional<DepPattern> match_dep(const Formula& f) {
  if (f.kind != Conn::Implies) return std::nullopt;
  auto determined = match_value_question(*f.right);
  if (!determined) return std::nullopt;
  std::vector<Term> determinants;
  // Collect conjunction leaves; every leaf must be a value question.
  std::vector<const Formula*> stack{f.left.get()};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->kind == Conn::And) {
      stack.push_back(g->right.get());
      stack.push_back(g->left.get());
      continue;
    }
    auto t = match_value_question(*g);
    if (!t) return std::nullopt;
    determinants.push_back(*t);
  }
  // Leaves were pushed left-first but popped in order, so re-reverse is not
  // needed; order does not matter for the closed form anyway.
  return DepPattern{std::move(determinants), *determined};
}

struct NodeInfo {
  int id = 0;
  std::vector<std::string> fv;  // sorted
  bool noinq = false;
  FormulaPtr classical;  // rewritten form, set when noinq
  std::optional<Term> vq;
  const Formula* question_arg = nullptr;  // set when the argument is noinq
  std::optional<DepPattern> dep;
};

struct VecHash {
  size_t operator()(const std::vector<int32_t>& v) const noexcept {
    size_t h = 1469598103934665603ull;
    for (int32_t x : v) {
      h ^= static_cast<uint32_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

class FastEval {
 public:
  FastEval(const Structure& m, FormulaPtr root, EvalConfig cfg, EvalStats* stats)
      : m_(m), root_(std::move(root)), cfg_(cfg), stats_(stats) {
    index(*root_);
    if (stats_) stats_->fast = true;
  }

  bool eval(const Team& x) {
    View v{&x, true, 0, {}};
    bind_base(x);
    return eval_view(v, *root_);
  }

  bool eval_subteam(const Team& x, uint64_t mask) {
    View v{&x, false, mask, {}};
    bind_base(x);
    return eval_view(v, *root_);
  }

 private:
  void bind_base(const Team& x) {
    base_cols_.clear();
    for (size_t i = 0; i < x.vars.size(); ++i) base_cols_[x.vars[i]] = i;
  }

  void index(const Formula& f) {
    if (info_.count(&f)) return;
    NodeInfo info;
    info.id = next_id_++;
    auto fvset = free_vars(f);
    info.fv.assign(fvset.begin(), fvset.end());
    info.noinq = no_inquisitive_ops(f);
    if (info.noinq) info.classical = to_classical(f);
    if (cfg_.enable_fast_paths) {
      info.vq = match_value_question(f);
      if (const Formula* arg = match_question(f); arg && no_inquisitive_ops(*arg))
        info.question_arg = arg;
      info.dep = match_dep(f);
    }
    info_.emplace(&f, std::move(info));
    if (f.left) index(*f.left);
    if (f.right) index(*f.right);
  }

  template <typename Fn>
  bool all_active(const View& v, Fn&& fn) const {
    if (v.all_rows) {
      for (size_t i = 0; i < v.base->size(); ++i)
        if (!fn(i)) return false;
      return true;
    }
    uint64_t m = v.mask;
    while (m) {
      size_t i = static_cast<size_t>(std::countr_zero(m));
      m &= m - 1;
      if (!fn(i)) return false;
    }
    return true;
  }

  int lookup(const View& v, size_t row, const std::string& name,
             const std::vector<std::pair<std::string, int>>& locals) const {
    for (auto it = locals.rbegin(); it != locals.rend(); ++it)
      if (it->first == name) return it->second;
    for (auto it = v.overrides.rbegin(); it != v.overrides.rend(); ++it)
      if (it->first == name) return it->second;
    auto col = base_cols_.find(name);
    if (col == base_cols_.end()) missing_var(name);
    return v.base->rows[row][col->second];
  }

  int denote_view(const View& v, size_t row, const Term& t,
                  std::vector<std::pair<std::string, int>>& locals) const {
    if (t.is_variable) return lookup(v, row, t.symbol, locals);
    auto table = m_.functions.find(t.symbol);
    if (table == m_.functions.end()) throw EvalError("no table for function '" + t.symbol + "'");
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const Term& a : t.args) args.push_back(denote_view(v, row, a, locals));
    auto entry = table->second.find(args);
    if (entry == table->second.end())
      throw EvalError("function table for '" + t.symbol + "' not total");
    return entry->second;
  }

  bool tarski_view(const View& v, size_t row, const Formula& f,
                   std::vector<std::pair<std::string, int>>& locals) const {
    switch (f.kind) {
      case Conn::Equal:
        return denote_view(v, row, f.terms[0], locals) == denote_view(v, row, f.terms[1], locals);
      case Conn::Atom: {
        std::vector<int> tuple;
        tuple.reserve(f.terms.size());
        for (const Term& t : f.terms) tuple.push_back(denote_view(v, row, t, locals));
        auto table = m_.predicates.find(f.symbol);
        return table != m_.predicates.end() && table->second.count(tuple) != 0;
      }
      case Conn::Bottom:
        return false;
      case Conn::And:
        return tarski_view(v, row, *f.left, locals) && tarski_view(v, row, *f.right, locals);
      case Conn::Implies:
        return !tarski_view(v, row, *f.left, locals) || tarski_view(v, row, *f.right, locals);
      case Conn::ForAll: {
        locals.emplace_back(f.symbol, 0);
        for (int d = 0; d < m_.domain_size; ++d) {
          locals.back().second = d;
          if (!tarski_view(v, row, *f.left, locals)) {
            locals.pop_back();
            return false;
          }
        }
        locals.pop_back();
        return true;
      }
      default:
        throw std::logic_error("tarski_view on a non-classical connective");
    }
  }

  Team materialize(const View& v) const {
    std::vector<std::string> vars = v.base->vars;
    std::map<std::string, int> constants;
    for (const auto& [name, value] : v.overrides) {
      if (!constants.count(name) && !std::count(vars.begin(), vars.end(), name))
        vars.push_back(name);
      constants[name] = value;
    }
    std::vector<std::vector<int>> rows;
    rows.reserve(v.active_rows());
    all_active(v, [&](size_t i) {
      std::vector<int> row;
      row.reserve(vars.size());
      std::vector<std::pair<std::string, int>> no_locals;
      for (const auto& name : vars) row.push_back(lookup(v, i, name, no_locals));
      rows.push_back(std::move(row));
      return true;
    });
    return Team::make(std::move(vars), std::move(rows));
  }

  bool eval_view(View& v, const Formula& f) {
    // Empty team property: the empty team supports every formula.
    if (v.active_rows() == 0) return true;
    const NodeInfo& info = info_.at(&f);

    if (cfg_.enable_fast_paths) {
      if (info.noinq && f.kind != Conn::Atom && f.kind != Conn::Equal && f.kind != Conn::Bottom) {
        if (stats_) ++stats_->flat_shortcuts;
        std::vector<std::pair<std::string, int>> locals;
        return all_active(v, [&](size_t i) { return tarski_view(v, i, *info.classical, locals); });
      }
      if (info.vq) {
        if (stats_) ++stats_->pattern_shortcuts;
        std::vector<std::pair<std::string, int>> locals;
        bool first = true;
        int value = 0;
        return all_active(v, [&](size_t i) {
          int d = denote_view(v, i, *info.vq, locals);
          if (first) {
            value = d;
            first = false;
            return true;
          }
          return d == value;
        });
      }
      if (info.question_arg) {
        if (stats_) ++stats_->pattern_shortcuts;
        const Formula& arg = *info_.at(info.question_arg).classical;
        std::vector<std::pair<std::string, int>> locals;
        bool first = true;
        bool value = false;
        return all_active(v, [&](size_t i) {
          bool b = tarski_view(v, i, arg, locals);
          if (first) {
            value = b;
            first = false;
            return true;
          }
          return b == value;
        });
      }
      if (info.dep) {
        if (stats_) ++stats_->pattern_shortcuts;
        std::vector<std::pair<std::string, int>> locals;
        std::map<std::vector<int>, int> graph;
        return all_active(v, [&](size_t i) {
          std::vector<int> key;
          key.reserve(info.dep->determinants.size());
          for (const Term& t : info.dep->determinants) key.push_back(denote_view(v, i, t, locals));
          int value = denote_view(v, i, info.dep->determined, locals);
          auto [it, inserted] = graph.emplace(std::move(key), value);
          return inserted || it->second == value;
        });
      }
    }

    switch (f.kind) {
      case Conn::Atom:
      case Conn::Equal: {
        std::vector<std::pair<std::string, int>> locals;
        return all_active(v, [&](size_t i) { return tarski_view(v, i, f, locals); });
      }
      case Conn::Bottom:
        return false;  // the empty case returned above
      case Conn::And:
        return eval_view(v, *f.left) && eval_view(v, *f.right);
      case Conn::IDisj:
        return eval_view(v, *f.left) || eval_view(v, *f.right);
      case Conn::Implies:
        return eval_implies(v, f, info);
      case Conn::ForAll: {
        v.overrides.emplace_back(f.symbol, 0);
        bool ok = true;
        for (int d = 0; d < m_.domain_size && ok; ++d) {
          v.overrides.back().second = d;
          ok = eval_view(v, *f.left);
        }
        v.overrides.pop_back();
        return ok;
      }
      case Conn::IExists: {
        v.overrides.emplace_back(f.symbol, 0);
        bool found = false;
        for (int d = 0; d < m_.domain_size && !found; ++d) {
          v.overrides.back().second = d;
          found = eval_view(v, *f.left);
        }
        v.overrides.pop_back();
        return found;
      }
      case Conn::RangeAll: {
        Team widened = extend_full(materialize(v), f.symbol, m_.domain_size);
        View w{&widened, true, 0, {}};
        auto saved = std::move(base_cols_);
        bind_base(widened);
        bool result = eval_view(w, *f.left);
        base_cols_ = std::move(saved);
        return result;
      }
    }
    throw std::logic_error("unreachable connective");
  }

  /// Canonical memo key: node id plus the rows of the current view restricted
  /// to the node's free variables. Locality makes the restriction sound.
  std::optional<std::vector<int32_t>> memo_key(const View& v, const NodeInfo& info) const {
    if (cfg_.memo_limit == 0) return std::nullopt;
    std::vector<int32_t> key;
    key.push_back(info.id);
    key.push_back(static_cast<int32_t>(info.fv.size()));
    std::vector<std::vector<int>> rows;
    rows.reserve(v.active_rows());
    std::vector<std::pair<std::string, int>> no_locals;
    all_active(v, [&](size_t i) {
      std::vector<int> tuple;
      tuple.reserve(info.fv.size());
      for (const auto& name : info.fv) tuple.push_back(lookup(v, i, name, no_locals));
      rows.push_back(std::move(tuple));
      return true;
    });
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    for (const auto& row : rows)
      for (int x : row) key.push_back(x);
    key.push_back(static_cast<int32_t>(rows.size()));
    return key;
  }

  bool eval_implies(View& v, const Formula& f, const NodeInfo& info) {
    std::optional<std::vector<int32_t>> key = memo_key(v, info);
    if (key) {
      auto hit = memo_.find(*key);
      if (hit != memo_.end()) {
        if (stats_) ++stats_->memo_hits;
        return hit->second;
      }
    }
    const bool result = eval_implies_uncached(v, f);
    if (key && memo_bytes_ < cfg_.memo_limit) {
      memo_bytes_ += key->size() * sizeof(int32_t) + 32;
      memo_.emplace(std::move(*key), result);
      if (stats_) ++stats_->memo_entries;
    }
    return result;
  }

  bool eval_implies_uncached(View& v, const Formula& f) {
    // Convert to an explicit mask over the base rows.
    uint64_t mask;
    if (v.all_rows) {
      if (v.base->size() > static_cast<size_t>(kMaskWidth))
        throw CapExceeded("implication over " + std::to_string(v.base->size()) + " rows");
      mask = (v.base->size() == 0) ? 0 : ((uint64_t(1) << v.base->size()) - 1);
    } else {
      mask = v.mask;
    }
    const int bits = std::popcount(mask);
    if (bits > effective_cap(cfg_))
      throw CapExceeded("implication over " + std::to_string(bits) + " rows exceeds cap " +
                        std::to_string(effective_cap(cfg_)));
    std::vector<int> positions;
    positions.reserve(bits);
    for (uint64_t m = mask; m;) {
      positions.push_back(std::countr_zero(m));
      m &= m - 1;
    }

    // Decreasing popcount order. A sub-team of a team that supports the
    // consequent cannot falsify the implication (persistency), so remember
    // consequent-supporting masks and skip anything below them.
    std::vector<uint64_t> safe;
    constexpr size_t kSafeCapacity = 64;
    View sub{v.base, false, 0, v.overrides};
    for (int k = bits; k >= 1; --k) {
      uint64_t comb = (uint64_t(1) << k) - 1;
      const uint64_t limit = uint64_t(1) << bits;
      while (comb < limit) {
        uint64_t submask = 0;
        for (uint64_t c = comb; c;) {
          int i = std::countr_zero(c);
          c &= c - 1;
          submask |= uint64_t(1) << positions[i];
        }
        bool skip = false;
        for (uint64_t s : safe) {
          if ((submask & ~s) == 0) {
            skip = true;
            break;
          }
        }
        if (!skip) {
          if (stats_) ++stats_->implication_masks;
          sub.mask = submask;
          if (eval_view(sub, *f.left)) {
            if (!eval_view(sub, *f.right)) return false;
            if (safe.size() < kSafeCapacity) safe.push_back(submask);
          }
        }
        // Gosper's hack: next bit pattern with the same popcount.
        uint64_t lo = comb & (~comb + 1);
        uint64_t up = comb + lo;
        comb = up | (((comb ^ up) / lo) >> 2);
      }
    }
    return true;  // the empty sub-team supports both sides
  }

  const Structure& m_;
  FormulaPtr root_;
  EvalConfig cfg_;
  EvalStats* stats_;
  int next_id_ = 0;
  std::unordered_map<const Formula*, NodeInfo> info_;
  mutable std::unordered_map<std::string, size_t> base_cols_;
  std::unordered_map<std::vector<int32_t>, bool, VecHash> memo_;
  size_t memo_bytes_ = 0;
};

}  // namespace

bool supports(const Structure& m, const Team& x, const FormulaPtr& f, const EvalConfig& cfg,
              EvalStats* stats) {
  check_team_covers(x, f);
  if (stats) stats->fast = false;
  return RefEval(m, cfg, stats).eval(x, *f);
}

bool supports_fast(const Structure& m, const Team& x, const FormulaPtr& f, const EvalConfig& cfg,
                   EvalStats* stats) {
  check_team_covers(x, f);
  return FastEval(m, f, cfg, stats).eval(x);
}

bool supports_path(const Structure& m, const Team& x, const FormulaPtr& f, EvalPath path,
                   const EvalConfig& cfg, EvalStats* stats) {
  return path == EvalPath::Reference ? supports(m, x, f, cfg, stats)
                                     : supports_fast(m, x, f, cfg, stats);
}

bool satisfies(const Structure& m, const FormulaPtr& sentence, const EvalConfig& cfg,
               EvalPath path) {
  if (!is_sentence(sentence)) throw EvalError("satisfaction is defined for sentences only");
  return supports_path(m, Team::unit(), sentence, path, cfg);
}

DepProfile relation_profile(const Relation& r, int domain_size) {
  if (r.arity != 2) throw std::invalid_argument("relation_profile expects a binary relation");
  DepProfile p;
  std::map<int, int> forward;
  std::map<int, int> backward;
  p.is_function = true;
  p.is_injective = true;
  for (const auto& tuple : r.tuples) {
    auto [fit, finserted] = forward.emplace(tuple[0], tuple[1]);
    if (!finserted && fit->second != tuple[1]) p.is_function = false;
    auto [bit, binserted] = backward.emplace(tuple[1], tuple[0]);
    if (!binserted && bit->second != tuple[0]) p.is_injective = false;
  }
  p.dom_is_full = static_cast<int>(forward.size()) == domain_size;
  p.ran_is_full = static_cast<int>(backward.size()) == domain_size;
  return p;
}

DepProfile dep_profile(const Structure& m, const Team& y, const std::string& x,
                       const std::string& yvar) {
  return relation_profile(team_relation(y, {x, yvar}), m.domain_size);
}

struct SupportSession::Impl {
  const Structure& m;
  FormulaPtr formula;
  EvalPath path;
  EvalConfig cfg;
  std::optional<FastEval> fast;

  Impl(const Structure& m, FormulaPtr f, EvalPath path, EvalConfig cfg)
      : m(m), formula(std::move(f)), path(path), cfg(cfg) {
    if (path == EvalPath::Fast) fast.emplace(m, formula, this->cfg, nullptr);
  }
};

SupportSession::SupportSession(const Structure& m, FormulaPtr f, EvalPath path, EvalConfig cfg)
    : impl_(std::make_unique<Impl>(m, std::move(f), path, cfg)) {}

SupportSession::SupportSession(SupportSession&&) noexcept = default;
SupportSession& SupportSession::operator=(SupportSession&&) noexcept = default;
SupportSession::~SupportSession() = default;

bool SupportSession::eval(const Team& x) {
  check_team_covers(x, impl_->formula);
  if (impl_->path == EvalPath::Fast) return impl_->fast->eval(x);
  return RefEval(impl_->m, impl_->cfg, nullptr).eval(x, *impl_->formula);
}

std::optional<Team> find_falsifying_subteam(const Structure& m, const Team& x,
                                            const FormulaPtr& antecedent,
                                            const FormulaPtr& consequent, const EvalConfig& cfg) {
  check_team_covers(x, antecedent);
  check_team_covers(x, consequent);
  const uint64_t n = subteam_count(x, effective_cap(cfg));
  FastEval ant(m, antecedent, cfg, nullptr);
  FastEval cons(m, consequent, cfg, nullptr);
  for (uint64_t mask = 0; mask < n; ++mask) {
    if (ant.eval_subteam(x, mask) && !cons.eval_subteam(x, mask)) return subteam(x, mask);
  }
  return std::nullopt;
}

}  // namespace inqlab
