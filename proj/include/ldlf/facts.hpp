/* facts.hpp -- ASP fact-file interchange: symbol tables, fact parsing */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ldlf/atom.hpp"

namespace ldlf {

// Per-automaton mapping from atoms to small integer identifiers.  User
// atoms come first in name order; `last` owns the first id after them.
class SymbolTable {
public:
  static SymbolTable for_atoms(const std::set<Atom> &user_atoms);

  int id_of(Atom a) const;               // -1 when absent
  std::optional<Atom> atom_of(int id) const;
  int last_id() const { return static_cast<int>(atoms_.size()) - 1; }
  const std::vector<Atom> &atoms() const { return atoms_; }

  // prop(Id,Name). lines, one per atom, id-ascending.
  std::string to_facts() const;

  bool operator==(const SymbolTable &o) const { return atoms_ == o.atoms_; }

private:
  std::vector<Atom> atoms_; // index = id; last element is `last`
  std::map<std::uint32_t, int> index_;
};

// Minimal ground-term representation for fact files: an integer, a
// quoted string, or a (possibly 0-ary) function symbol over terms.
struct FactTerm {
  enum Kind { Int, Str, Fun } kind = Fun;
  long long int_value = 0;
  std::string text; // string contents or function name
  std::vector<FactTerm> args;

  bool is_int() const { return kind == Int; }
  bool is_str() const { return kind == Str; }
  bool is_name(const std::string &n) const { return kind == Fun && text == n; }
};

struct Fact {
  FactTerm term; // always Fun at top level
  int line = 0;
  const std::string &name() const { return term.text; }
  std::size_t arity() const { return term.args.size(); }
};

// Parses `name(arg,...).` lines; '%' starts a comment.  Diagnostics
// carry 1-based line numbers.
std::vector<Fact> parse_facts(const std::string &text);

// Rendering helpers shared by the exporters.
std::string quote_string(const std::string &s);

} // namespace ldlf
