#include "inqlab/inqbq.hpp"

#include <bit>
#include <stdexcept>

namespace inqlab {

const Signature& InfoModel::signature() const {
  if (worlds.empty()) throw std::invalid_argument("info model needs at least one world");
  return worlds.front().sig;
}

void InfoModel::validate() const {
  if (worlds.empty()) throw std::invalid_argument("info model needs at least one world");
  if (worlds.size() > 62) throw std::invalid_argument("info model exceeds the state-mask width");
  const Signature& sig = worlds.front().sig;
  for (const Structure& w : worlds) {
    if (w.domain_size != domain_size)
      throw std::invalid_argument("worlds must share the individual domain");
    if (w.sig.predicates != sig.predicates || w.sig.functions != sig.functions)
      throw std::invalid_argument("worlds must share the signature");
    w.validate();
  }
}

StateMask full_state(const InfoModel& m) {
  return (uint64_t(1) << m.world_count()) - 1;
}

int denote_at(const InfoModel& m, int world, const Assignment& g, const Term& t) {
  return denote(m.worlds.at(world), g, t);
}

namespace {

template <typename Fn>
bool all_worlds(StateMask s, Fn&& fn) {
  while (s) {
    int w = std::countr_zero(s);
    s &= s - 1;
    if (!fn(w)) return false;
  }
  return true;
}

}  // namespace

bool state_supports(const InfoModel& m, StateMask s, const Assignment& g, const FormulaPtr& fp,
                    const EvalConfig& cfg) {
  const Formula& f = *fp;
  switch (f.kind) {
    case Conn::Atom:
      return all_worlds(s, [&](int w) {
        std::vector<int> tuple;
        tuple.reserve(f.terms.size());
        for (const Term& t : f.terms) tuple.push_back(denote_at(m, w, g, t));
        auto table = m.worlds[w].predicates.find(f.symbol);
        return table != m.worlds[w].predicates.end() && table->second.count(tuple) != 0;
      });
    case Conn::Equal:
      return all_worlds(s, [&](int w) {
        return denote_at(m, w, g, f.terms[0]) == denote_at(m, w, g, f.terms[1]);
      });
    case Conn::Bottom:
      return s == 0;
    case Conn::And:
      return state_supports(m, s, g, f.left, cfg) && state_supports(m, s, g, f.right, cfg);
    case Conn::IDisj:
      return state_supports(m, s, g, f.left, cfg) || state_supports(m, s, g, f.right, cfg);
    case Conn::Implies: {
      const int bits = std::popcount(s);
      if (bits > cfg.naive_subteam_cap)
        throw CapExceeded("sub-state enumeration over " + std::to_string(bits) +
                          " worlds exceeds cap");
      // All t subseteq s, via the standard submask walk (plus the empty state).
      for (StateMask t = s;; t = (t - 1) & s) {
        if (state_supports(m, t, g, f.left, cfg) && !state_supports(m, t, g, f.right, cfg))
          return false;
        if (t == 0) break;
      }
      return true;
    }
    case Conn::ForAll: {
      Assignment h = g;
      for (int d = 0; d < m.domain_size; ++d) {
        h[f.symbol] = d;
        if (!state_supports(m, s, h, f.left, cfg)) return false;
      }
      return true;
    }
    case Conn::IExists: {
      Assignment h = g;
      for (int d = 0; d < m.domain_size; ++d) {
        h[f.symbol] = d;
        if (state_supports(m, s, h, f.left, cfg)) return true;
      }
      return false;
    }
    case Conn::RangeAll:
      throw EvalError("the range quantifier is not part of the InqBQ language");
  }
  throw std::logic_error("unreachable connective");
}

bool inqbq_satisfies(const InfoModel& m, const FormulaPtr& sentence, const EvalConfig& cfg) {
  if (!is_sentence(sentence)) throw EvalError("satisfaction is defined for sentences only");
  return state_supports(m, full_state(m), {}, sentence, cfg);
}

Relation state_relation(const InfoModel& m, StateMask s) {
  const Signature& sig = m.signature();
  auto a = sig.functions.find("a");
  auto b = sig.functions.find("b");
  if (a == sig.functions.end() || b == sig.functions.end() || a->second != 0 || b->second != 0)
    throw std::invalid_argument("state_relation needs the constants a and b");
  Relation r;
  r.arity = 2;
  all_worlds(s, [&](int w) {
    r.tuples.insert({m.worlds[w].functions.at("a").at({}), m.worlds[w].functions.at("b").at({})});
    return true;
  });
  return r;
}

InfoModel build_full_model(int n) {
  if (n < 1) throw std::invalid_argument("domain must be non-empty");
  InfoModel m;
  m.domain_size = n;
  Signature sig;
  sig.constant("a").constant("b");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Structure w;
      w.domain_size = n;
      w.sig = sig;
      w.functions["a"][{}] = i;
      w.functions["b"][{}] = j;
      m.worlds.push_back(std::move(w));
    }
  }
  m.validate();
  return m;
}

TwoSortedStructure encode_relational(const InfoModel& m) {
  m.validate();
  TwoSortedStructure s;
  s.world_count = m.world_count();
  s.domain_size = m.domain_size;
  s.sig = m.signature();
  for (const auto& [name, arity] : s.sig.predicates) {
    (void)arity;
    auto& table = s.predicates[name];
    for (int w = 0; w < s.world_count; ++w) {
      auto world_table = m.worlds[w].predicates.find(name);
      if (world_table == m.worlds[w].predicates.end()) continue;
      for (const auto& tuple : world_table->second) {
        std::vector<int> lifted;
        lifted.reserve(tuple.size() + 1);
        lifted.push_back(w);
        lifted.insert(lifted.end(), tuple.begin(), tuple.end());
        table.insert(std::move(lifted));
      }
    }
  }
  for (const auto& [name, arity] : s.sig.functions) {
    (void)arity;
    auto& table = s.functions[name];
    for (int w = 0; w < s.world_count; ++w) {
      for (const auto& [tuple, value] : m.worlds[w].functions.at(name)) {
        std::vector<int> lifted;
        lifted.reserve(tuple.size() + 1);
        lifted.push_back(w);
        lifted.insert(lifted.end(), tuple.begin(), tuple.end());
        table[std::move(lifted)] = value;
      }
    }
  }
  return s;
}

InfoModel decode_relational(const TwoSortedStructure& s) {
  InfoModel m;
  m.domain_size = s.domain_size;
  for (int w = 0; w < s.world_count; ++w) {
    Structure world;
    world.domain_size = s.domain_size;
    world.sig = s.sig;
    for (const auto& [name, table] : s.predicates) {
      auto& world_table = world.predicates[name];
      for (const auto& lifted : table) {
        if (lifted.empty() || lifted[0] != w) continue;
        world_table.insert(std::vector<int>(lifted.begin() + 1, lifted.end()));
      }
    }
    for (const auto& [name, table] : s.functions) {
      auto& world_table = world.functions[name];
      for (const auto& [lifted, value] : table) {
        if (lifted.empty() || lifted[0] != w) continue;
        world_table[std::vector<int>(lifted.begin() + 1, lifted.end())] = value;
      }
    }
    m.worlds.push_back(std::move(world));
  }
  m.validate();
  return m;
}

namespace fo2 {

Term evar(std::string name) {
  Term t;
  t.is_variable = true;
  t.symbol = std::move(name);
  return t;
}

Term eapp(std::string function, std::string world_var, std::vector<Term> args) {
  Term t;
  t.is_variable = false;
  t.symbol = std::move(function);
  t.world_var = std::move(world_var);
  t.args = std::move(args);
  return t;
}

namespace {

FormulaPtr make(Kind kind, std::string symbol, std::string world_var, Sort sort,
                std::vector<Term> terms, FormulaPtr left, FormulaPtr right) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->symbol = std::move(symbol);
  f->world_var = std::move(world_var);
  f->sort = sort;
  f->terms = std::move(terms);
  f->left = std::move(left);
  f->right = std::move(right);
  return f;
}

}  // namespace

FormulaPtr atom(std::string predicate, std::string world_var, std::vector<Term> args) {
  return make(Kind::Atom, std::move(predicate), std::move(world_var), Sort::Entity,
              std::move(args), nullptr, nullptr);
}

FormulaPtr equal(Term lhs, Term rhs) {
  return make(Kind::EqualE, "", "", Sort::Entity, {std::move(lhs), std::move(rhs)}, nullptr,
              nullptr);
}

FormulaPtr bottom() { return make(Kind::Bottom, "", "", Sort::Entity, {}, nullptr, nullptr); }

FormulaPtr lnot(FormulaPtr a) {
  return make(Kind::Not, "", "", Sort::Entity, {}, std::move(a), nullptr);
}

FormulaPtr land(FormulaPtr a, FormulaPtr b) {
  return make(Kind::And, "", "", Sort::Entity, {}, std::move(a), std::move(b));
}

FormulaPtr lor(FormulaPtr a, FormulaPtr b) {
  return make(Kind::Or, "", "", Sort::Entity, {}, std::move(a), std::move(b));
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return make(Kind::Implies, "", "", Sort::Entity, {}, std::move(a), std::move(b));
}

FormulaPtr forall(Sort sort, std::string v, FormulaPtr body) {
  return make(Kind::ForAll, std::move(v), "", sort, {}, std::move(body), nullptr);
}

FormulaPtr exists(Sort sort, std::string v, FormulaPtr body) {
  return make(Kind::Exists, std::move(v), "", sort, {}, std::move(body), nullptr);
}

namespace {

std::string term_string(const Term& t) {
  if (t.is_variable) return t.symbol;
  std::string out = t.symbol + "*(" + t.world_var;
  for (const Term& a : t.args) out += "," + term_string(a);
  out += ")";
  return out;
}

}  // namespace

std::string to_string(const FormulaPtr& fp) {
  const Formula& f = *fp;
  switch (f.kind) {
    case Kind::Atom: {
      std::string out = f.symbol + "*(" + f.world_var;
      for (const Term& t : f.terms) out += "," + term_string(t);
      return out + ")";
    }
    case Kind::EqualE:
      return term_string(f.terms[0]) + " = " + term_string(f.terms[1]);
    case Kind::Bottom:
      return "bot";
    case Kind::Not:
      return "~(" + to_string(f.left) + ")";
    case Kind::And:
      return "(" + to_string(f.left) + " & " + to_string(f.right) + ")";
    case Kind::Or:
      return "(" + to_string(f.left) + " | " + to_string(f.right) + ")";
    case Kind::Implies:
      return "(" + to_string(f.left) + " -> " + to_string(f.right) + ")";
    case Kind::ForAll:
      return (f.sort == Sort::World ? "forall_w " : "forall ") + f.symbol + ". (" +
             to_string(f.left) + ")";
    case Kind::Exists:
      return (f.sort == Sort::World ? "exists_w " : "exists ") + f.symbol + ". (" +
             to_string(f.left) + ")";
  }
  throw std::logic_error("unreachable fo2 kind");
}

}  // namespace fo2

namespace {

struct Fo2Env {
  const TwoSortedStructure& s;
  std::map<std::string, int> worlds;
  std::map<std::string, int> entities;
};

int fo2_world(const Fo2Env& env, const std::string& v) {
  auto it = env.worlds.find(v);
  if (it == env.worlds.end())
    throw EvalError("world variable '" + v + "' is unbound (sort error?)");
  return it->second;
}

int fo2_denote(const Fo2Env& env, const fo2::Term& t) {
  if (t.is_variable) {
    auto it = env.entities.find(t.symbol);
    if (it == env.entities.end())
      throw EvalError("entity variable '" + t.symbol + "' is unbound (sort error?)");
    return it->second;
  }
  auto table = env.s.functions.find(t.symbol);
  if (table == env.s.functions.end())
    throw EvalError("unknown lifted function '" + t.symbol + "'");
  std::vector<int> tuple;
  tuple.reserve(t.args.size() + 1);
  tuple.push_back(fo2_world(env, t.world_var));
  for (const fo2::Term& a : t.args) tuple.push_back(fo2_denote(env, a));
  auto entry = table->second.find(tuple);
  if (entry == table->second.end())
    throw EvalError("lifted function table for '" + t.symbol + "' not total");
  return entry->second;
}

bool fo2_truth(Fo2Env& env, const fo2::Formula& f) {
  using fo2::Kind;
  using fo2::Sort;
  switch (f.kind) {
    case Kind::Atom: {
      std::vector<int> tuple;
      tuple.reserve(f.terms.size() + 1);
      tuple.push_back(fo2_world(env, f.world_var));
      for (const fo2::Term& t : f.terms) tuple.push_back(fo2_denote(env, t));
      auto table = env.s.predicates.find(f.symbol);
      return table != env.s.predicates.end() && table->second.count(tuple) != 0;
    }
    case Kind::EqualE:
      return fo2_denote(env, f.terms[0]) == fo2_denote(env, f.terms[1]);
    case Kind::Bottom:
      return false;
    case Kind::Not:
      return !fo2_truth(env, *f.left);
    case Kind::And:
      return fo2_truth(env, *f.left) && fo2_truth(env, *f.right);
    case Kind::Or:
      return fo2_truth(env, *f.left) || fo2_truth(env, *f.right);
    case Kind::Implies:
      return !fo2_truth(env, *f.left) || fo2_truth(env, *f.right);
    case Kind::ForAll:
    case Kind::Exists: {
      const bool universal = f.kind == Kind::ForAll;
      auto& scope = f.sort == Sort::World ? env.worlds : env.entities;
      const int extent = f.sort == Sort::World ? env.s.world_count : env.s.domain_size;
      const auto previous = scope.find(f.symbol) != scope.end()
                                ? std::optional<int>(scope[f.symbol])
                                : std::nullopt;
      bool result = universal;
      for (int d = 0; d < extent; ++d) {
        scope[f.symbol] = d;
        const bool inner = fo2_truth(env, *f.left);
        if (universal && !inner) {
          result = false;
          break;
        }
        if (!universal && inner) {
          result = true;
          break;
        }
      }
      if (previous)
        scope[f.symbol] = *previous;
      else
        scope.erase(f.symbol);
      return result;
    }
  }
  throw std::logic_error("unreachable fo2 kind");
}

}  // namespace

bool fo2_eval(const TwoSortedStructure& s, const fo2::FormulaPtr& sentence) {
  Fo2Env env{s, {}, {}};
  return fo2_truth(env, *sentence);
}

std::vector<TranslationPair> sample_translations() {
  using fo2::Sort;
  const Term a = cnst("a");
  std::vector<TranslationPair> pairs;

  // P(a)  <->  forall w. P*(w, a*(w))
  pairs.push_back({"P(a)", atom("P", {a}),
                   fo2::forall(Sort::World, "w",
                               fo2::atom("P", "w", {fo2::eapp("a", "w")}))});

  // ?P(a)  <->  forall w. P*(w, a*(w)) | forall w. ~P*(w, a*(w))
  pairs.push_back(
      {"?P(a)", question(atom("P", {a})),
       fo2::lor(fo2::forall(Sort::World, "w", fo2::atom("P", "w", {fo2::eapp("a", "w")})),
                fo2::forall(Sort::World, "w",
                            fo2::lnot(fo2::atom("P", "w", {fo2::eapp("a", "w")}))))});

  // iexists x. P(x)  <->  exists x. forall w. P*(w, x)
  pairs.push_back({"iexists x. P(x)", iexists("x", atom("P", {var("x")})),
                   fo2::exists(Sort::Entity, "x",
                               fo2::forall(Sort::World, "w",
                                           fo2::atom("P", "w", {fo2::evar("x")})))});
  return pairs;
}

InfoModelEnumerator::InfoModelEnumerator(Signature sig, int world_count, int domain_size,
                                         uint64_t cap)
    : worlds_(std::move(sig), domain_size, cap),
      world_count_(world_count),
      domain_size_(domain_size) {
  if (world_count < 1 || world_count > 62)
    throw std::invalid_argument("world count outside supported range");
  count_ = 1;
  for (int w = 0; w < world_count; ++w) {
    if (worlds_.count() != 0 && count_ > cap / worlds_.count())
      throw std::length_error("info model enumeration exceeds cap");
    count_ *= worlds_.count();
  }
}

InfoModel InfoModelEnumerator::at(uint64_t index) const {
  if (index >= count_) throw std::out_of_range("info model index");
  InfoModel m;
  m.domain_size = domain_size_;
  for (int w = 0; w < world_count_; ++w) {
    m.worlds.push_back(worlds_.at(index % worlds_.count()));
    index /= worlds_.count();
  }
  return m;
}

}  // namespace inqlab
