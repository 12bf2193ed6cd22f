#include "ldlf/syntax.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

#include "ldlf/errors.hpp"

namespace ldlf {
namespace {

/* ------------------------------------------------------------------ */
/* Tokens                                                              */

enum class Tok {
  Ident,
  KwTT,
  KwFF,
  KwEnd,
  KwStep,
  Arrow,    // ->
  Bar,      // |
  Amp,      // &
  Bang,     // !
  Next,     // X
  WNext,    // wX
  Diam,     // <>
  Alw,      // []
  Lt,       // <
  Gt,       // >
  LBrack,   // [
  RBrack,   // ]
  LParen,
  RParen,
  Star,     // *
  Quest,    // ?
  Plus,     // +
  Semi,     // ;
  SemiSemi, // ;;
  Until,    // U
  Release,  // R
  Tilde,    // ~
  AmpTrue,  // &true
  AmpFalse, // &false
  AmpTau,   // &t
  DiaOp,    // .>?
  BoxOp,    // .>*
  End,
};

const char *tok_name(Tok t) {
  switch (t) {
  case Tok::Ident: return "atom";
  case Tok::KwTT: return "'tt'";
  case Tok::KwFF: return "'ff'";
  case Tok::KwEnd: return "'end'";
  case Tok::KwStep: return "'step'";
  case Tok::Arrow: return "'->'";
  case Tok::Bar: return "'|'";
  case Tok::Amp: return "'&'";
  case Tok::Bang: return "'!'";
  case Tok::Next: return "'X'";
  case Tok::WNext: return "'wX'";
  case Tok::Diam: return "'<>'";
  case Tok::Alw: return "'[]'";
  case Tok::Lt: return "'<'";
  case Tok::Gt: return "'>'";
  case Tok::LBrack: return "'['";
  case Tok::RBrack: return "']'";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::Star: return "'*'";
  case Tok::Quest: return "'?'";
  case Tok::Plus: return "'+'";
  case Tok::Semi: return "';'";
  case Tok::SemiSemi: return "';;'";
  case Tok::Until: return "'U'";
  case Tok::Release: return "'R'";
  case Tok::Tilde: return "'~'";
  case Tok::AmpTrue: return "'&true'";
  case Tok::AmpFalse: return "'&false'";
  case Tok::AmpTau: return "'&t'";
  case Tok::DiaOp: return "'.>?'";
  case Tok::BoxOp: return "'.>*'";
  case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(const std::string &text, Dialect dialect) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  auto push = [&](Tok t, std::size_t n) {
    out.push_back({t, text.substr(i, n), line, col});
    bump(n);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '#') { // line comment
      while (i < text.size() && text[i] != '\n')
        bump(1);
      continue;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (i + n < text.size() && ident_char(text[i + n]))
        ++n;
      std::string word = text.substr(i, n);
      if (dialect == Dialect::Canonical) {
        if (word == "tt") { push(Tok::KwTT, n); continue; }
        if (word == "ff") { push(Tok::KwFF, n); continue; }
        if (word == "end") { push(Tok::KwEnd, n); continue; }
        if (word == "step") { push(Tok::KwStep, n); continue; }
        if (word == "wX") { push(Tok::WNext, n); continue; }
      }
      push(Tok::Ident, n);
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (i + n < text.size() && ident_char(text[i + n]))
        ++n;
      std::string word = text.substr(i, n);
      if (dialect == Dialect::Canonical) {
        if (word == "X") { push(Tok::Next, n); continue; }
        if (word == "U") { push(Tok::Until, n); continue; }
        if (word == "R") { push(Tok::Release, n); continue; }
      }
      throw ParseError("unexpected token '" + word + "'", line, col);
    }
    auto two = [&](const char *s) {
      return text.compare(i, 2, s) == 0;
    };
    if (dialect == Dialect::TheoryGrammar) {
      if (text.compare(i, 3, ".>?") == 0) { push(Tok::DiaOp, 3); continue; }
      if (text.compare(i, 3, ".>*") == 0) { push(Tok::BoxOp, 3); continue; }
      if (c == '&') {
        auto kw = [&](const char *w, std::size_t n) {
          return text.compare(i + 1, n, w) == 0 &&
                 (i + 1 + n >= text.size() || !ident_char(text[i + 1 + n]));
        };
        if (kw("true", 4)) { push(Tok::AmpTrue, 5); continue; }
        if (kw("false", 5)) { push(Tok::AmpFalse, 6); continue; }
        if (kw("t", 1)) { push(Tok::AmpTau, 2); continue; }
        push(Tok::Amp, 1);
        continue;
      }
      if (i + 1 < text.size() && two(";;")) { push(Tok::SemiSemi, 2); continue; }
      switch (c) {
      case '~': push(Tok::Tilde, 1); continue;
      case '?': push(Tok::Quest, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '|': push(Tok::Bar, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
      }
    }
    // canonical punctuation
    if (i + 1 < text.size()) {
      if (two("->")) { push(Tok::Arrow, 2); continue; }
      if (two("<>")) { push(Tok::Diam, 2); continue; }
      if (two("[]")) { push(Tok::Alw, 2); continue; }
    }
    switch (c) {
    case '|': push(Tok::Bar, 1); continue;
    case '&': push(Tok::Amp, 1); continue;
    case '!': push(Tok::Bang, 1); continue;
    case '<': push(Tok::Lt, 1); continue;
    case '>': push(Tok::Gt, 1); continue;
    case '[': push(Tok::LBrack, 1); continue;
    case ']': push(Tok::RBrack, 1); continue;
    case '(': push(Tok::LParen, 1); continue;
    case ')': push(Tok::RParen, 1); continue;
    case '*': push(Tok::Star, 1); continue;
    case '?': push(Tok::Quest, 1); continue;
    case '+': push(Tok::Plus, 1); continue;
    case ';': push(Tok::Semi, 1); continue;
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

/* ------------------------------------------------------------------ */
/* Canonical parser                                                    */

class CanonicalParser {
public:
  explicit CanonicalParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    expect(Tok::End);
    return f;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token &peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok t) {
    if (at(t)) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string &expected) {
    const Token &t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + expected + ", got " + got, t.line, t.col);
  }
  void expect(Tok t) {
    if (!accept(t))
      fail(tok_name(t));
  }

  Atom make_atom(const Token &t) {
    if (t.text == "last")
      throw ParseError("'last' is reserved and may not appear in formulas",
                       t.line, t.col);
    return Atom::make(t.text);
  }

  // formula := or ('->' formula)?
  FormulaPtr formula() {
    FormulaPtr l = or_level();
    if (accept(Tok::Arrow))
      return implies(l, formula());
    return l;
  }
  FormulaPtr or_level() {
    FormulaPtr l = and_level();
    while (accept(Tok::Bar))
      l = lor(l, and_level());
    return l;
  }
  FormulaPtr and_level() {
    FormulaPtr l = unary_level();
    while (accept(Tok::Amp))
      l = land(l, unary_level());
    return l;
  }
  FormulaPtr unary_level() {
    if (accept(Tok::Bang))
      return neg(unary_level());
    if (accept(Tok::Next))
      return next(unary_level());
    if (accept(Tok::WNext))
      return wnext(unary_level());
    if (accept(Tok::Diam))
      return eventually(unary_level());
    if (accept(Tok::Alw))
      return always(unary_level());
    return until_level();
  }
  // until := modal (('U'|'R') until)?   (right-assoc)
  FormulaPtr until_level() {
    FormulaPtr l = modal_level();
    if (accept(Tok::Until))
      return until(l, until_level());
    if (accept(Tok::Release))
      return release(l, until_level());
    return l;
  }
  FormulaPtr modal_level() {
    if (accept(Tok::Lt)) {
      PathPtr p = path();
      expect(Tok::Gt);
      return diamond(p, modal_level());
    }
    if (accept(Tok::LBrack)) {
      PathPtr p = path();
      expect(Tok::RBrack);
      return box(p, modal_level());
    }
    return primary();
  }
  FormulaPtr primary() {
    if (accept(Tok::KwTT))
      return truth();
    if (accept(Tok::KwFF))
      return falsity();
    if (accept(Tok::KwEnd))
      return final_state();
    if (at(Tok::Ident))
      return prop(make_atom(take()));
    if (accept(Tok::LParen)) {
      FormulaPtr f = formula();
      expect(Tok::RParen);
      return f;
    }
    fail("a formula");
  }

  // path := pseq ('+' pseq)*
  PathPtr path() {
    PathPtr l = pseq();
    while (accept(Tok::Plus))
      l = choice(l, pseq());
    return l;
  }
  PathPtr pseq() {
    PathPtr l = postfix();
    while (accept(Tok::Semi))
      l = seq(l, postfix());
    return l;
  }

  // A parenthesized group may denote a formula (for tests and bare
  // propositional paths) or a genuine path grouping; a full-formula
  // parse is attempted first and must end exactly at the ')'.
  PathPtr postfix() {
    PathPtr p;
    std::optional<FormulaPtr> group; // parenthesized formula, '?'-able
    if (accept(Tok::KwStep)) {
      p = step();
    } else if (at(Tok::LParen)) {
      std::size_t save = pos_;
      ++pos_;
      bool as_formula = false;
      FormulaPtr f;
      try {
        f = formula();
        as_formula = at(Tok::RParen);
      } catch (const ParseError &) {
        as_formula = false;
      }
      if (as_formula) {
        ++pos_; // ')'
        group = f;
        p = prop_path(f);
      } else {
        pos_ = save;
        expect(Tok::LParen);
        p = path();
        expect(Tok::RParen);
      }
    } else {
      // bare formula at modality level, standing for (formula? ; step)
      p = prop_path(modal_level());
    }
    while (true) {
      if (accept(Tok::Star)) {
        p = star(p);
        group.reset();
      } else if (at(Tok::Quest)) {
        if (!group)
          fail("'*', '+', ';' or '>' (postfix '?' applies to a "
               "parenthesized formula)");
        ++pos_;
        p = test(*group);
        group.reset();
      } else {
        break;
      }
    }
    return p;
  }
};

/* ------------------------------------------------------------------ */
/* Theory-grammar parser                                               */

// Untyped operator terms; a typing pass maps them onto formulas and
// paths, inserting the formula-as-path coercion where needed.
struct TTerm {
  enum Kind { AtomT, True, False, Tau, Unary, Binary } kind;
  Tok op = Tok::End;
  std::string name;
  int line = 0, col = 0;
  std::shared_ptr<TTerm> lhs, rhs;
};
using TTermPtr = std::shared_ptr<TTerm>;

class TheoryParser {
public:
  explicit TheoryParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr run() {
    TTermPtr t = expr(0);
    if (toks_[pos_].kind != Tok::End) {
      const Token &tk = toks_[pos_];
      throw ParseError("unexpected trailing input '" + tk.text + "'", tk.line,
                       tk.col);
    }
    return to_formula(t);
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  static int prec(Tok t) {
    switch (t) {
    case Tok::DiaOp:
    case Tok::BoxOp: return 1;
    case Tok::Bar: return 2;
    case Tok::Amp: return 3;
    case Tok::Plus: return 4;
    case Tok::SemiSemi: return 5;
    default: return -1;
    }
  }
  static bool right_assoc(Tok t) { return t == Tok::DiaOp || t == Tok::BoxOp; }
  static constexpr int kPrefixPrec = 6;

  TTermPtr expr(int min_prec) {
    TTermPtr l = prefix();
    while (true) {
      Tok op = toks_[pos_].kind;
      int p = prec(op);
      if (p < min_prec || p < 0)
        break;
      ++pos_;
      TTermPtr r = expr(right_assoc(op) ? p : p + 1);
      auto t = std::make_shared<TTerm>();
      t->kind = TTerm::Binary;
      t->op = op;
      t->lhs = l;
      t->rhs = r;
      l = t;
    }
    return l;
  }

  TTermPtr prefix() {
    const Token &tk = toks_[pos_];
    switch (tk.kind) {
    case Tok::Tilde:
    case Tok::Quest:
    case Tok::Star: {
      ++pos_;
      auto t = std::make_shared<TTerm>();
      t->kind = TTerm::Unary;
      t->op = tk.kind;
      t->line = tk.line;
      t->col = tk.col;
      t->lhs = expr(kPrefixPrec);
      return t;
    }
    case Tok::AmpTrue:
    case Tok::AmpFalse:
    case Tok::AmpTau: {
      ++pos_;
      auto t = std::make_shared<TTerm>();
      t->kind = tk.kind == Tok::AmpTrue    ? TTerm::True
                : tk.kind == Tok::AmpFalse ? TTerm::False
                                           : TTerm::Tau;
      t->line = tk.line;
      t->col = tk.col;
      return t;
    }
    case Tok::Ident: {
      ++pos_;
      if (tk.text == "last")
        throw ParseError("'last' is reserved and may not appear in formulas",
                         tk.line, tk.col);
      auto t = std::make_shared<TTerm>();
      t->kind = TTerm::AtomT;
      t->name = tk.text;
      t->line = tk.line;
      t->col = tk.col;
      return t;
    }
    case Tok::LParen: {
      ++pos_;
      TTermPtr t = expr(0);
      if (toks_[pos_].kind != Tok::RParen)
        throw ParseError("expected ')', got '" + toks_[pos_].text + "'",
                         toks_[pos_].line, toks_[pos_].col);
      ++pos_;
      return t;
    }
    default:
      throw ParseError("expected a formula, got " +
                           (tk.kind == Tok::End ? "end of input"
                                                : "'" + tk.text + "'"),
                       tk.line, tk.col);
    }
  }

  [[noreturn]] static void type_error(const TTerm &t, const std::string &msg) {
    throw ParseError(msg, t.line, t.col);
  }

  FormulaPtr to_formula(const TTermPtr &t) {
    switch (t->kind) {
    case TTerm::AtomT: return prop(Atom::make(t->name));
    case TTerm::True: return truth();
    case TTerm::False: return falsity();
    case TTerm::Tau: type_error(*t, "'&t' is a path, not a formula");
    case TTerm::Unary:
      if (t->op == Tok::Tilde)
        return neg(to_formula(t->lhs));
      type_error(*t, "path expression where a formula is required");
    case TTerm::Binary:
      switch (t->op) {
      case Tok::Amp: return land(to_formula(t->lhs), to_formula(t->rhs));
      case Tok::Bar: return lor(to_formula(t->lhs), to_formula(t->rhs));
      case Tok::DiaOp: return diamond(to_path(t->lhs), to_formula(t->rhs));
      case Tok::BoxOp: return box(to_path(t->lhs), to_formula(t->rhs));
      default:
        type_error(*t, "path expression where a formula is required");
      }
    }
    type_error(*t, "malformed expression");
  }

  PathPtr to_path(const TTermPtr &t) {
    switch (t->kind) {
    case TTerm::Tau: return step();
    case TTerm::Unary:
      if (t->op == Tok::Quest)
        return test(to_formula(t->lhs));
      if (t->op == Tok::Star)
        return star(to_path(t->lhs));
      break; // ~ falls through to formula coercion
    case TTerm::Binary:
      if (t->op == Tok::Plus)
        return choice(to_path(t->lhs), to_path(t->rhs));
      if (t->op == Tok::SemiSemi)
        return seq(to_path(t->lhs), to_path(t->rhs));
      break;
    default:
      break;
    }
    return prop_path(to_formula(t));
  }
};

/* ------------------------------------------------------------------ */
/* Printers                                                            */

// Canonical precedence levels, weakest to strongest:
//   0 ->   1 |   2 &   3 prefix   4 U/R   5 modalities   6 primary
int can_level(const FormulaPtr &f) {
  switch (f->kind()) {
  case FKind::Implies: return 0;
  case FKind::Or: return 1;
  case FKind::And: return 2;
  case FKind::Neg:
  case FKind::Next:
  case FKind::WeakNext:
  case FKind::Eventually:
  case FKind::Always: return 3;
  case FKind::Until:
  case FKind::Release: return 4;
  case FKind::Diamond:
  case FKind::Box: return 5;
  default: return 6;
  }
}

void can_print(const FormulaPtr &f, int min_level, std::string &out);

// Path levels: 0 choice, 1 seq, 2 postfix, 3 base.
int can_plevel(const PathPtr &p) {
  switch (p->kind()) {
  case PKind::Choice: return 0;
  case PKind::Seq: return 1;
  case PKind::Star: return 2;
  default: return 3;
  }
}

void can_pprint(const PathPtr &p, int min_level, std::string &out) {
  int lvl = can_plevel(p);
  bool parens = lvl < min_level;
  if (parens)
    out += '(';
  switch (p->kind()) {
  case PKind::Step:
    out += "step";
    break;
  case PKind::Test:
    out += '(';
    can_print(p->formula(), 0, out);
    out += ")?";
    break;
  case PKind::Choice:
    can_pprint(p->lhs(), 0, out);
    out += " + ";
    can_pprint(p->rhs(), 1, out);
    break;
  case PKind::Seq:
    can_pprint(p->lhs(), 1, out);
    out += " ; ";
    can_pprint(p->rhs(), 2, out);
    break;
  case PKind::Star:
    can_pprint(p->lhs(), 2, out);
    out += '*';
    break;
  case PKind::PropPath:
    if (can_level(p->formula()) >= 5) {
      can_print(p->formula(), 5, out);
    } else {
      out += '(';
      can_print(p->formula(), 0, out);
      out += ')';
    }
    break;
  }
  if (parens)
    out += ')';
}

void can_print(const FormulaPtr &f, int min_level, std::string &out) {
  int lvl = can_level(f);
  bool parens = lvl < min_level;
  if (parens)
    out += '(';
  switch (f->kind()) {
  case FKind::Truth: out += "tt"; break;
  case FKind::Falsity: out += "ff"; break;
  case FKind::Final: out += "end"; break;
  case FKind::Prop: out += f->atom().name(); break;
  case FKind::Neg:
    out += '!';
    can_print(f->lhs(), 3, out);
    break;
  case FKind::Next:
    out += "X ";
    can_print(f->lhs(), 3, out);
    break;
  case FKind::WeakNext:
    out += "wX ";
    can_print(f->lhs(), 3, out);
    break;
  case FKind::Eventually:
    out += "<> ";
    can_print(f->lhs(), 3, out);
    break;
  case FKind::Always:
    out += "[] ";
    can_print(f->lhs(), 3, out);
    break;
  case FKind::And:
    can_print(f->lhs(), 2, out);
    out += " & ";
    can_print(f->rhs(), 3, out);
    break;
  case FKind::Or:
    can_print(f->lhs(), 1, out);
    out += " | ";
    can_print(f->rhs(), 2, out);
    break;
  case FKind::Implies:
    can_print(f->lhs(), 1, out);
    out += " -> ";
    can_print(f->rhs(), 0, out);
    break;
  case FKind::Until:
    can_print(f->lhs(), 5, out);
    out += " U ";
    can_print(f->rhs(), 4, out);
    break;
  case FKind::Release:
    can_print(f->lhs(), 5, out);
    out += " R ";
    can_print(f->rhs(), 4, out);
    break;
  case FKind::Diamond:
    out += '<';
    can_pprint(f->path(), 0, out);
    out += "> ";
    can_print(f->lhs(), 5, out);
    break;
  case FKind::Box:
    out += '[';
    can_pprint(f->path(), 0, out);
    out += "] ";
    can_print(f->lhs(), 5, out);
    break;
  }
  if (parens)
    out += ')';
}

// Theory levels: 1 .>?/.>*   2 |   3 &   4 +   5 ;;   6 prefix   7 primary
int th_level(const FormulaPtr &f) {
  switch (f->kind()) {
  case FKind::Diamond:
  case FKind::Box: return 1;
  case FKind::Or: return 2;
  case FKind::And: return 3;
  case FKind::Neg: return 6;
  case FKind::Truth:
  case FKind::Falsity:
  case FKind::Prop: return 7;
  default:
    throw UnsupportedError("operator '" + print(f, Dialect::Canonical) +
                           "' has no theory-grammar token; desugar first");
  }
}

int th_plevel(const PathPtr &p) {
  switch (p->kind()) {
  case PKind::Choice: return 4;
  case PKind::Seq: return 5;
  case PKind::Star:
  case PKind::Test: return 6;
  case PKind::Step: return 7;
  case PKind::PropPath: return 0; // decided by the formula inside
  }
  return 7;
}

void th_print(const FormulaPtr &f, int min_level, std::string &out);

void th_pprint(const PathPtr &p, int min_level, std::string &out) {
  if (p->kind() == PKind::PropPath) {
    th_print(p->formula(), min_level, out);
    return;
  }
  int lvl = th_plevel(p);
  bool parens = lvl < min_level;
  if (parens)
    out += '(';
  switch (p->kind()) {
  case PKind::Step: out += "&t"; break;
  case PKind::Test:
    out += "? ";
    th_print(p->formula(), 6, out);
    break;
  case PKind::Star:
    out += "* ";
    th_pprint(p->lhs(), 6, out);
    break;
  case PKind::Choice:
    th_pprint(p->lhs(), 4, out);
    out += " + ";
    th_pprint(p->rhs(), 5, out);
    break;
  case PKind::Seq:
    th_pprint(p->lhs(), 5, out);
    out += " ;; ";
    th_pprint(p->rhs(), 6, out);
    break;
  case PKind::PropPath:
    break; // handled above
  }
  if (parens)
    out += ')';
}

void th_print(const FormulaPtr &f, int min_level, std::string &out) {
  int lvl = th_level(f);
  bool parens = lvl < min_level;
  if (parens)
    out += '(';
  switch (f->kind()) {
  case FKind::Truth: out += "&true"; break;
  case FKind::Falsity: out += "&false"; break;
  case FKind::Prop: out += f->atom().name(); break;
  case FKind::Neg:
    out += "~ ";
    th_print(f->lhs(), 6, out);
    break;
  case FKind::And:
    th_print(f->lhs(), 3, out);
    out += " & ";
    th_print(f->rhs(), 4, out);
    break;
  case FKind::Or:
    th_print(f->lhs(), 2, out);
    out += " | ";
    th_print(f->rhs(), 3, out);
    break;
  case FKind::Diamond:
    th_pprint(f->path(), 2, out);
    out += " .>? ";
    th_print(f->lhs(), 1, out);
    break;
  case FKind::Box:
    th_pprint(f->path(), 2, out);
    out += " .>* ";
    th_print(f->lhs(), 1, out);
    break;
  default:
    throw UnsupportedError("operator has no theory-grammar token; desugar "
                           "first");
  }
  if (parens)
    out += ')';
}

} // namespace

FormulaPtr parse(const std::string &text, Dialect dialect) {
  std::vector<Token> toks = lex(text, dialect);
  if (dialect == Dialect::Canonical)
    return CanonicalParser(std::move(toks)).run();
  return TheoryParser(std::move(toks)).run();
}

std::string print(const FormulaPtr &f, Dialect dialect) {
  std::string out;
  if (dialect == Dialect::Canonical)
    can_print(f, 0, out);
  else
    th_print(f, 0, out);
  return out;
}

std::string print(const PathPtr &p, Dialect dialect) {
  std::string out;
  if (dialect == Dialect::Canonical)
    can_pprint(p, 0, out);
  else
    th_pprint(p, 0, out);
  return out;
}

} // namespace ldlf
