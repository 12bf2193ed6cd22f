#include "ldlf/facts.hpp"

#include <cctype>

#include "ldlf/errors.hpp"

namespace ldlf {

SymbolTable SymbolTable::for_atoms(const std::set<Atom> &user_atoms) {
  SymbolTable t;
  for (Atom a : user_atoms) { // std::set<Atom> iterates in name order
    if (a.is_last())
      throw UnsupportedError("'last' cannot be a user atom");
    t.index_[a.id()] = static_cast<int>(t.atoms_.size());
    t.atoms_.push_back(a);
  }
  t.index_[Atom::last().id()] = static_cast<int>(t.atoms_.size());
  t.atoms_.push_back(Atom::last());
  return t;
}

int SymbolTable::id_of(Atom a) const {
  auto it = index_.find(a.id());
  return it == index_.end() ? -1 : it->second;
}

std::optional<Atom> SymbolTable::atom_of(int id) const {
  if (id < 0 || id >= static_cast<int>(atoms_.size()))
    return std::nullopt;
  return atoms_[id];
}

std::string SymbolTable::to_facts() const {
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    out += "prop(" + std::to_string(i) + "," + atoms_[i].name() + ").\n";
  }
  return out;
}

std::string quote_string(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

struct FactLexer {
  const std::string &text;
  std::size_t pos = 0;
  int line = 1;

  explicit FactLexer(const std::string &t) : text(t) {}

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '%') {
        while (pos < text.size() && text[pos] != '\n')
          ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() { return text[pos]; }

  [[noreturn]] void fail(const std::string &msg) {
    throw ParseError(msg, line, 0);
  }

  FactTerm term() {
    skip_ws();
    if (pos >= text.size())
      fail("unexpected end of fact file");
    char c = text[pos];
    if (c == '"') {
      ++pos;
      FactTerm t;
      t.kind = FactTerm::Str;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size())
          ++pos;
        if (text[pos] == '\n')
          ++line;
        t.text += text[pos++];
      }
      if (pos >= text.size())
        fail("unterminated string");
      ++pos;
      return t;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      if (c == '-')
        ++pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos == start + (c == '-' ? 1u : 0u))
        fail("malformed integer");
      FactTerm t;
      t.kind = FactTerm::Int;
      t.int_value = std::stoll(text.substr(start, pos - start));
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        ++pos;
      FactTerm t;
      t.kind = FactTerm::Fun;
      t.text = text.substr(start, pos - start);
      skip_ws();
      if (pos < text.size() && text[pos] == '(') {
        ++pos;
        while (true) {
          t.args.push_back(term());
          skip_ws();
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
          }
          fail("expected ',' or ')' in term arguments");
        }
      }
      return t;
    }
    fail(std::string("unexpected character '") + c + "' in fact file");
  }
};

} // namespace

std::vector<Fact> parse_facts(const std::string &text) {
  FactLexer lex(text);
  std::vector<Fact> out;
  while (!lex.eof()) {
    Fact f;
    f.line = lex.line;
    f.term = lex.term();
    if (f.term.kind != FactTerm::Fun)
      throw ParseError("a fact must be a function symbol", f.line, 0);
    lex.skip_ws();
    if (lex.pos >= lex.text.size() || lex.peek() != '.')
      throw ParseError("expected '.' after fact '" + f.term.text + "'",
                       lex.line, 0);
    ++lex.pos;
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace ldlf
