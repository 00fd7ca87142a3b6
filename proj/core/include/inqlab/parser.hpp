#pragma once

#include <stdexcept>
#include <string>

#include "inqlab/syntax.hpp"

namespace inqlab {

/// Half-open byte range into the parser input.
struct SourceSpan {
  size_t start = 0;
  size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span, int line, int column);
  const std::string& message() const { return message_; }
  SourceSpan span() const { return span_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  SourceSpan span_;
  int line_;
  int column_;
};

/// Parses the concrete syntax into a core formula. Derived operators
/// (~, |, ?, exists, !=, lam, dep) are desugared on construction.
///
/// Grammar, loosest to tightest: `->` (right-assoc), `ior`, `|`, `&`, then
/// prefix `~`/`?` and the quantifier prefixes `forall x.`, `exists x.`,
/// `iexists x.`, `[x]`, whose bodies are single prefix-level units
/// (parenthesize larger bodies). Atoms: `P(t,...)`, `t = t`, `t != t`,
/// `bot`, `lam t`, `dep(t,...; t)`.
FormulaPtr parse(const std::string& text, const Signature& sig);

/// Canonical text for a core formula; emits only core operators, so sugar is
/// never re-introduced. parse(render(f), sig) re-builds an AST-equal formula.
std::string render(const FormulaPtr& f);
std::string render(const Formula& f);

std::string render_term(const Term& t);

}  // namespace inqlab
