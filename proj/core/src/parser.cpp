#include "inqlab/parser.hpp"

#include <cctype>
#include <sstream>

namespace inqlab {

namespace {

enum class Tok {
  Ident,
  KwBot,
  KwForall,
  KwExists,
  KwIExists,
  KwLam,
  KwDep,
  KwIor,
  Arrow,     // ->
  Bar,       // |
  Amp,       // &
  Tilde,     // ~
  Question,  // ?
  LParen,
  RParen,
  LBracket,
  RBracket,
  Dot,
  Comma,
  Semicolon,
  Equals,
  NotEquals,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      size_t start = pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", {start, start}});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          ++pos_;
        std::string word = text_.substr(start, pos_ - start);
        out.push_back({keyword(word), word, {start, pos_}});
        continue;
      }
      switch (c) {
        case '-':
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            pos_ += 2;
            out.push_back({Tok::Arrow, "->", {start, pos_}});
            continue;
          }
          fail("stray '-' (did you mean '->'?)", {start, start + 1});
        case '!':
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
            pos_ += 2;
            out.push_back({Tok::NotEquals, "!=", {start, pos_}});
            continue;
          }
          fail("stray '!' (did you mean '!='?)", {start, start + 1});
        case '|': push_simple(out, Tok::Bar, start); continue;
        case '&': push_simple(out, Tok::Amp, start); continue;
        case '~': push_simple(out, Tok::Tilde, start); continue;
        case '?': push_simple(out, Tok::Question, start); continue;
        case '(': push_simple(out, Tok::LParen, start); continue;
        case ')': push_simple(out, Tok::RParen, start); continue;
        case '[': push_simple(out, Tok::LBracket, start); continue;
        case ']': push_simple(out, Tok::RBracket, start); continue;
        case '.': push_simple(out, Tok::Dot, start); continue;
        case ',': push_simple(out, Tok::Comma, start); continue;
        case ';': push_simple(out, Tok::Semicolon, start); continue;
        case '=': push_simple(out, Tok::Equals, start); continue;
        default:
          fail(std::string("unexpected character '") + c + "'", {start, start + 1});
      }
    }
  }

  [[noreturn]] void fail(const std::string& message, SourceSpan span) const {
    int line = 1, column = 1;
    for (size_t i = 0; i < span.start && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, span, line, column);
  }

 private:
  static Tok keyword(const std::string& word) {
    if (word == "bot") return Tok::KwBot;
    if (word == "forall") return Tok::KwForall;
    if (word == "exists") return Tok::KwExists;
    if (word == "iexists") return Tok::KwIExists;
    if (word == "lam") return Tok::KwLam;
    if (word == "dep") return Tok::KwDep;
    if (word == "ior") return Tok::KwIor;
    return Tok::Ident;
  }

  void push_simple(std::vector<Token>& out, Tok kind, size_t start) {
    ++pos_;
    out.push_back({kind, text_.substr(start, 1), {start, pos_}});
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig)
      : lexer_(text), sig_(sig), tokens_(lexer_.run()) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }
  bool accept(Tok kind) {
    if (peek().kind == kind) {
      ++index_;
      return true;
    }
    return false;
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) lexer_.fail("expected " + what, peek().span);
    return tokens_[index_++];
  }

  // -> is right-associative and loosest.
  FormulaPtr formula() {
    FormulaPtr lhs = iordisj();
    if (accept(Tok::Arrow)) return implies(std::move(lhs), formula());
    return lhs;
  }

  FormulaPtr iordisj() {
    FormulaPtr lhs = ordisj();
    while (accept(Tok::KwIor)) lhs = idisj(std::move(lhs), ordisj());
    return lhs;
  }

  FormulaPtr ordisj() {
    FormulaPtr lhs = conj();
    while (accept(Tok::Bar)) lhs = cor(std::move(lhs), conj());
    return lhs;
  }

  FormulaPtr conj() {
    FormulaPtr lhs = unary();
    while (accept(Tok::Amp)) lhs = land(std::move(lhs), unary());
    return lhs;
  }

  // Prefix operators and quantifiers take a unary-level body; use
  // parentheses for anything wider.
  FormulaPtr unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
        advance();
        return lnot(unary());
      case Tok::Question:
        advance();
        return question(unary());
      case Tok::KwForall: {
        advance();
        std::string v = bound_variable();
        expect(Tok::Dot, "'.' after quantified variable");
        return forall(std::move(v), unary());
      }
      case Tok::KwExists: {
        advance();
        std::string v = bound_variable();
        expect(Tok::Dot, "'.' after quantified variable");
        return cexists(std::move(v), unary());
      }
      case Tok::KwIExists: {
        advance();
        std::string v = bound_variable();
        expect(Tok::Dot, "'.' after quantified variable");
        return iexists(std::move(v), unary());
      }
      case Tok::LBracket: {
        advance();
        std::string v = bound_variable();
        expect(Tok::RBracket, "']' after range variable");
        return rangeall(std::move(v), unary());
      }
      default:
        return primary();
    }
  }

  std::string bound_variable() {
    const Token& t = expect(Tok::Ident, "variable name");
    if (sig_.has_symbol(t.text))
      lexer_.fail("bound variable '" + t.text + "' shadows a signature symbol", t.span);
    return t.text;
  }

  FormulaPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwBot:
        advance();
        return bottom();
      case Tok::KwLam: {
        advance();
        return value_question(term());
      }
      case Tok::KwDep:
        return dep();
      case Tok::LParen: {
        advance();
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        if (sig_.has_predicate(t.text)) return predicate_atom();
        [[fallthrough]];
      default:
        return equality_atom();
    }
  }

  FormulaPtr dep() {
    advance();  // dep
    expect(Tok::LParen, "'(' after dep");
    std::vector<Term> determinants;
    determinants.push_back(term());
    while (accept(Tok::Comma)) determinants.push_back(term());
    expect(Tok::Semicolon, "';' before the determined term");
    Term determined = term();
    expect(Tok::RParen, "')'");
    return dep_atom(std::move(determinants), std::move(determined));
  }

  FormulaPtr predicate_atom() {
    const Token& name = advance();
    const int arity = sig_.predicates.at(name.text);
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
      if (!accept(Tok::RParen)) {
        args.push_back(term());
        while (accept(Tok::Comma)) args.push_back(term());
        expect(Tok::RParen, "')'");
      }
    }
    if (static_cast<int>(args.size()) != arity)
      lexer_.fail("predicate '" + name.text + "' expects " + std::to_string(arity) +
                      " arguments, got " + std::to_string(args.size()),
                  name.span);
    return atom(name.text, std::move(args));
  }

  FormulaPtr equality_atom() {
    const Token& at = peek();
    if (at.kind != Tok::Ident) lexer_.fail("expected a formula", at.span);
    Term lhs = term();
    if (accept(Tok::Equals)) return equal(std::move(lhs), term());
    if (accept(Tok::NotEquals)) return not_equal(std::move(lhs), term());
    lexer_.fail("expected '=' or '!=' after term", peek().span);
  }

  Term term() {
    const Token& t = expect(Tok::Ident, "term");
    if (sig_.has_predicate(t.text))
      lexer_.fail("predicate '" + t.text + "' used in term position", t.span);
    auto fn = sig_.functions.find(t.text);
    if (fn == sig_.functions.end()) {
      // Plain variable.
      return var(t.text);
    }
    std::vector<Term> args;
    if (peek().kind == Tok::LParen && fn->second > 0) {
      advance();
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "')'");
    }
    if (static_cast<int>(args.size()) != fn->second)
      lexer_.fail("function '" + t.text + "' expects " + std::to_string(fn->second) +
                      " arguments, got " + std::to_string(args.size()),
                  t.span);
    return app(t.text, std::move(args));
  }

  Lexer lexer_;
  const Signature& sig_;
  std::vector<Token> tokens_;
  size_t index_ = 0;
};

// Renderer precedence levels; parenthesize a child whose level is below the
// context requirement.
constexpr int kLevelImplies = 0;
constexpr int kLevelIDisj = 1;
constexpr int kLevelAnd = 3;  // 2 is reserved for '|', which render never emits
constexpr int kLevelPrefix = 4;
constexpr int kLevelPrimary = 5;

int level_of(const Formula& f) {
  switch (f.kind) {
    case Conn::Implies: return kLevelImplies;
    case Conn::IDisj: return kLevelIDisj;
    case Conn::And: return kLevelAnd;
    case Conn::ForAll:
    case Conn::IExists:
    case Conn::RangeAll: return kLevelPrefix;
    default: return kLevelPrimary;
  }
}

void render_into(const Formula& f, int min_level, std::string& out) {
  const int level = level_of(f);
  const bool parens = level < min_level;
  if (parens) out += '(';
  switch (f.kind) {
    case Conn::Atom:
      out += f.symbol;
      if (!f.terms.empty()) {
        out += '(';
        for (size_t i = 0; i < f.terms.size(); ++i) {
          if (i) out += ',';
          out += render_term(f.terms[i]);
        }
        out += ')';
      }
      break;
    case Conn::Equal:
      out += render_term(f.terms[0]);
      out += " = ";
      out += render_term(f.terms[1]);
      break;
    case Conn::Bottom:
      out += "bot";
      break;
    case Conn::And:
      render_into(*f.left, kLevelAnd, out);
      out += " & ";
      render_into(*f.right, kLevelAnd + 1, out);
      break;
    case Conn::IDisj:
      render_into(*f.left, kLevelIDisj, out);
      out += " ior ";
      render_into(*f.right, kLevelIDisj + 1, out);
      break;
    case Conn::Implies:
      render_into(*f.left, kLevelImplies + 1, out);
      out += " -> ";
      render_into(*f.right, kLevelImplies, out);
      break;
    case Conn::ForAll:
      out += "forall " + f.symbol + ". ";
      render_into(*f.left, kLevelPrefix, out);
      break;
    case Conn::IExists:
      out += "iexists " + f.symbol + ". ";
      render_into(*f.left, kLevelPrefix, out);
      break;
    case Conn::RangeAll:
      out += "[" + f.symbol + "]";
      render_into(*f.left, kLevelPrefix, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

ParseError::ParseError(std::string message, SourceSpan span, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(std::move(message)),
      span_(span),
      line_(line),
      column_(column) {}

FormulaPtr parse(const std::string& text, const Signature& sig) {
  return Parser(text, sig).run();
}

std::string render(const Formula& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

std::string render(const FormulaPtr& f) { return render(*f); }

std::string render_term(const Term& t) {
  if (t.is_variable) return t.symbol;
  std::string out = t.symbol;
  if (!t.args.empty()) {
    out += '(';
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      out += render_term(t.args[i]);
    }
    out += ')';
  }
  return out;
}

}  // namespace inqlab
