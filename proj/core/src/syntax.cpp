#include "inqlab/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace inqlab {

Signature& Signature::predicate(std::string name, int arity) {
  if (name == "=") throw std::invalid_argument("the identity symbol is built in");
  if (arity < 0) throw std::invalid_argument("negative arity for " + name);
  if (has_function(name)) throw std::invalid_argument("symbol already a function: " + name);
  predicates[std::move(name)] = arity;
  return *this;
}

Signature& Signature::function(std::string name, int arity) {
  if (name == "=") throw std::invalid_argument("the identity symbol is built in");
  if (arity < 0) throw std::invalid_argument("negative arity for " + name);
  if (has_predicate(name)) throw std::invalid_argument("symbol already a predicate: " + name);
  functions[std::move(name)] = arity;
  return *this;
}

Term var(std::string name) {
  Term t;
  t.is_variable = true;
  t.symbol = std::move(name);
  return t;
}

Term app(std::string function, std::vector<Term> args) {
  Term t;
  t.is_variable = false;
  t.symbol = std::move(function);
  t.args = std::move(args);
  return t;
}

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable) {
    out.insert(t.symbol);
  } else {
    for (const Term& a : t.args) collect_term_vars(a, out);
  }
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

namespace {

FormulaPtr make(Conn kind, std::string symbol, std::vector<Term> terms, FormulaPtr left,
                FormulaPtr right) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->symbol = std::move(symbol);
  f->terms = std::move(terms);
  f->left = std::move(left);
  f->right = std::move(right);
  return f;
}

}  // namespace

FormulaPtr atom(std::string predicate, std::vector<Term> args) {
  return make(Conn::Atom, std::move(predicate), std::move(args), nullptr, nullptr);
}

FormulaPtr equal(Term lhs, Term rhs) {
  return make(Conn::Equal, "", {std::move(lhs), std::move(rhs)}, nullptr, nullptr);
}

FormulaPtr bottom() { return make(Conn::Bottom, "", {}, nullptr, nullptr); }

FormulaPtr land(FormulaPtr a, FormulaPtr b) {
  return make(Conn::And, "", {}, std::move(a), std::move(b));
}

FormulaPtr idisj(FormulaPtr a, FormulaPtr b) {
  return make(Conn::IDisj, "", {}, std::move(a), std::move(b));
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return make(Conn::Implies, "", {}, std::move(a), std::move(b));
}

FormulaPtr forall(std::string v, FormulaPtr body) {
  return make(Conn::ForAll, std::move(v), {}, std::move(body), nullptr);
}

FormulaPtr iexists(std::string v, FormulaPtr body) {
  return make(Conn::IExists, std::move(v), {}, std::move(body), nullptr);
}

FormulaPtr rangeall(std::string v, FormulaPtr body) {
  return make(Conn::RangeAll, std::move(v), {}, std::move(body), nullptr);
}

bool ast_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.symbol != b.symbol || a.terms != b.terms) return false;
  if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
  if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
  if (a.left && !ast_equal(*a.left, *b.left)) return false;
  if (a.right && !ast_equal(*a.right, *b.right)) return false;
  return true;
}

bool ast_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return ast_equal(*a, *b);
}

FormulaPtr lnot(FormulaPtr a) { return implies(std::move(a), bottom()); }

FormulaPtr cor(FormulaPtr a, FormulaPtr b) {
  return lnot(land(lnot(std::move(a)), lnot(std::move(b))));
}

FormulaPtr liff(FormulaPtr a, FormulaPtr b) {
  return land(implies(a, b), implies(b, a));
}

FormulaPtr cexists(std::string v, FormulaPtr body) {
  return lnot(forall(std::move(v), lnot(std::move(body))));
}

FormulaPtr question(FormulaPtr a) {
  FormulaPtr neg = lnot(a);
  return idisj(std::move(a), std::move(neg));
}

FormulaPtr value_question(Term t) {
  const std::string v = fresh_variable(term_vars(t));
  return forall(v, question(equal(var(v), t)));
}

FormulaPtr dep_atom(std::vector<Term> determinants, Term determined) {
  if (determinants.empty())
    throw std::invalid_argument("dependence atom needs at least one determinant");
  std::vector<FormulaPtr> antecedents;
  antecedents.reserve(determinants.size());
  for (Term& t : determinants) antecedents.push_back(value_question(std::move(t)));
  return implies(conjoin(std::move(antecedents)), value_question(std::move(determined)));
}

FormulaPtr not_equal(Term lhs, Term rhs) { return lnot(equal(std::move(lhs), std::move(rhs))); }

FormulaPtr conjoin(std::vector<FormulaPtr> conjuncts) {
  if (conjuncts.empty()) throw std::invalid_argument("conjoin needs at least one conjunct");
  FormulaPtr acc = std::move(conjuncts.front());
  for (size_t i = 1; i < conjuncts.size(); ++i) acc = land(std::move(acc), std::move(conjuncts[i]));
  return acc;
}

FormulaPtr desugar(const DerivedForm& d) {
  using Tag = DerivedForm::Tag;
  auto need_formulas = [&](size_t n) {
    if (d.formulas.size() != n) throw std::invalid_argument("derived form: wrong operand count");
  };
  switch (d.tag) {
    case Tag::Not:
      need_formulas(1);
      return lnot(d.formulas[0]);
    case Tag::COr:
      need_formulas(2);
      return cor(d.formulas[0], d.formulas[1]);
    case Tag::Iff:
      need_formulas(2);
      return liff(d.formulas[0], d.formulas[1]);
    case Tag::CExists:
      need_formulas(1);
      if (d.variable.empty()) throw std::invalid_argument("derived form: missing bound variable");
      return cexists(d.variable, d.formulas[0]);
    case Tag::QuestionMark:
      need_formulas(1);
      return question(d.formulas[0]);
    case Tag::ValueQuestion:
      if (d.terms.size() != 1) throw std::invalid_argument("value question takes one term");
      return value_question(d.terms[0]);
    case Tag::DepAtom: {
      if (d.terms.size() < 2)
        throw std::invalid_argument("dependence atom takes determinants plus one determined term");
      std::vector<Term> dets(d.terms.begin(), d.terms.end() - 1);
      return dep_atom(std::move(dets), d.terms.back());
    }
  }
  throw std::logic_error("unreachable derived tag");
}

FormulaPtr desugar(const FormulaPtr& f) { return f; }

std::string fresh_variable(const std::set<std::string>& taken) {
  for (int i = 0;; ++i) {
    std::string candidate = "v" + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

namespace {

void free_vars_into(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Conn::Atom:
    case Conn::Equal: {
      std::set<std::string> vs;
      for (const Term& t : f.terms) collect_term_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Conn::Bottom:
      return;
    case Conn::And:
    case Conn::IDisj:
    case Conn::Implies:
      free_vars_into(*f.left, bound, out);
      free_vars_into(*f.right, bound, out);
      return;
    case Conn::ForAll:
    case Conn::IExists:
    case Conn::RangeAll: {
      const bool was_bound = bound.count(f.symbol) != 0;
      bound.insert(f.symbol);
      free_vars_into(*f.left, bound, out);
      if (!was_bound) bound.erase(f.symbol);
      return;
    }
  }
}

void all_vars_into(const Formula& f, std::set<std::string>& out) {
  for (const Term& t : f.terms) collect_term_vars(t, out);
  if (f.kind == Conn::ForAll || f.kind == Conn::IExists || f.kind == Conn::RangeAll)
    out.insert(f.symbol);
  if (f.left) all_vars_into(*f.left, out);
  if (f.right) all_vars_into(*f.right, out);
}

bool legal_variable_name(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void check_term(const Term& t, const Signature& sig, const std::string& path,
                std::vector<Diagnostic>& out) {
  if (t.is_variable) {
    if (!legal_variable_name(t.symbol))
      out.push_back({path, "illegal variable name '" + t.symbol + "'"});
    if (sig.has_symbol(t.symbol))
      out.push_back({path, "variable '" + t.symbol + "' shadows a signature symbol"});
    return;
  }
  auto it = sig.functions.find(t.symbol);
  if (it == sig.functions.end()) {
    out.push_back({path, "unknown function symbol '" + t.symbol + "'"});
  } else if (static_cast<size_t>(it->second) != t.args.size()) {
    out.push_back({path, "function '" + t.symbol + "' expects " + std::to_string(it->second) +
                             " arguments, got " + std::to_string(t.args.size())});
  }
  for (size_t i = 0; i < t.args.size(); ++i)
    check_term(t.args[i], sig, path + "/" + std::to_string(i), out);
}

void check_formula(const Formula& f, const Signature& sig, const std::string& path,
                   std::vector<Diagnostic>& out) {
  switch (f.kind) {
    case Conn::Atom: {
      auto it = sig.predicates.find(f.symbol);
      if (it == sig.predicates.end()) {
        out.push_back({path, "unknown predicate symbol '" + f.symbol + "'"});
      } else if (static_cast<size_t>(it->second) != f.terms.size()) {
        out.push_back({path, "predicate '" + f.symbol + "' expects " + std::to_string(it->second) +
                                 " arguments, got " + std::to_string(f.terms.size())});
      }
      for (size_t i = 0; i < f.terms.size(); ++i)
        check_term(f.terms[i], sig, path + "/arg" + std::to_string(i), out);
      return;
    }
    case Conn::Equal:
      check_term(f.terms[0], sig, path + "/lhs", out);
      check_term(f.terms[1], sig, path + "/rhs", out);
      return;
    case Conn::Bottom:
      return;
    case Conn::And:
    case Conn::IDisj:
    case Conn::Implies:
      check_formula(*f.left, sig, path + "/left", out);
      check_formula(*f.right, sig, path + "/right", out);
      return;
    case Conn::ForAll:
    case Conn::IExists:
    case Conn::RangeAll:
      if (!legal_variable_name(f.symbol))
        out.push_back({path, "illegal bound variable name '" + f.symbol + "'"});
      else if (sig.has_symbol(f.symbol))
        out.push_back({path, "bound variable '" + f.symbol + "' shadows a signature symbol"});
      check_formula(*f.left, sig, path + "/body", out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

std::set<std::string> free_vars(const FormulaPtr& f) { return free_vars(*f); }

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  all_vars_into(f, out);
  return out;
}

std::vector<Diagnostic> well_formed(const FormulaPtr& f, const Signature& sig) {
  std::vector<Diagnostic> out;
  check_formula(*f, sig, "", out);
  return out;
}

namespace {

template <typename Pred>
bool all_nodes(const Formula& f, Pred pred) {
  if (!pred(f)) return false;
  if (f.left && !all_nodes(*f.left, pred)) return false;
  if (f.right && !all_nodes(*f.right, pred)) return false;
  return true;
}

}  // namespace

bool is_classical(const Formula& f) {
  return all_nodes(f, [](const Formula& g) {
    return g.kind != Conn::IDisj && g.kind != Conn::IExists && g.kind != Conn::RangeAll;
  });
}

bool is_classical(const FormulaPtr& f) { return is_classical(*f); }

bool no_inquisitive_ops(const Formula& f) {
  return all_nodes(f,
                   [](const Formula& g) { return g.kind != Conn::IDisj && g.kind != Conn::IExists; });
}

bool no_inquisitive_ops(const FormulaPtr& f) { return no_inquisitive_ops(*f); }

bool is_inqbt(const Formula& f) {
  return all_nodes(f, [](const Formula& g) { return g.kind != Conn::RangeAll; });
}

bool is_inqbt(const FormulaPtr& f) { return is_inqbt(*f); }

bool is_sentence(const FormulaPtr& f) { return free_vars(*f).empty(); }

}  // namespace inqlab
