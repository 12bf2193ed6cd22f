/* formula.hpp -- dynamic formulas and path expressions */
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ldlf/atom.hpp"

namespace ldlf {

class Formula;
class Path;
using FormulaPtr = std::shared_ptr<const Formula>;
using PathPtr = std::shared_ptr<const Path>;

// Core connectives first, sugar after.  `desugar` eliminates everything
// from And onwards except Neg; `nnf` then pushes Neg down to atoms.
enum class FKind {
  Truth,
  Falsity,
  Prop,
  Neg,
  Diamond,
  Box,
  // sugar
  And,
  Or,
  Implies,
  Next,
  WeakNext,
  Eventually,
  Always,
  Final,
  Until,
  Release,
};

// Path expressions.  PropPath is sugar for (formula? ; step).
enum class PKind { Step, Test, Choice, Seq, Star, PropPath };

class Formula {
public:
  FKind kind() const { return kind_; }
  Atom atom() const { return *atom_; }
  const FormulaPtr &lhs() const { return lhs_; }
  const FormulaPtr &rhs() const { return rhs_; }
  const PathPtr &path() const { return path_; }
  std::size_t hash() const { return hash_; }

  bool is_modal() const { return kind_ == FKind::Diamond || kind_ == FKind::Box; }

  static FormulaPtr make(FKind kind, std::optional<Atom> atom, FormulaPtr lhs,
                         FormulaPtr rhs, PathPtr path);

private:
  Formula() = default;
  FKind kind_;
  std::optional<Atom> atom_;
  FormulaPtr lhs_, rhs_;
  PathPtr path_;
  std::size_t hash_;
};

class Path {
public:
  PKind kind() const { return kind_; }
  const PathPtr &lhs() const { return lhs_; }
  const PathPtr &rhs() const { return rhs_; }
  const FormulaPtr &formula() const { return formula_; }
  std::size_t hash() const { return hash_; }

  static PathPtr make(PKind kind, PathPtr lhs, PathPtr rhs, FormulaPtr formula);

private:
  Path() = default;
  PKind kind_;
  PathPtr lhs_, rhs_;
  FormulaPtr formula_;
  std::size_t hash_;
};

// Constructors.
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr prop(Atom a);
FormulaPtr prop(std::string_view name);
FormulaPtr neg(FormulaPtr f);
FormulaPtr diamond(PathPtr p, FormulaPtr f);
FormulaPtr box(PathPtr p, FormulaPtr f);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr next(FormulaPtr f);
FormulaPtr wnext(FormulaPtr f);
FormulaPtr eventually(FormulaPtr f);
FormulaPtr always(FormulaPtr f);
FormulaPtr final_state();
FormulaPtr until(FormulaPtr a, FormulaPtr b);
FormulaPtr release(FormulaPtr a, FormulaPtr b);

PathPtr step();
PathPtr test(FormulaPtr f);
PathPtr choice(PathPtr a, PathPtr b);
PathPtr seq(PathPtr a, PathPtr b);
PathPtr star(PathPtr p);
PathPtr prop_path(FormulaPtr f);

// Structural equality and a total order (used everywhere determinism
// matters: closure ordering, state numbering, fact emission).
bool equal(const FormulaPtr &a, const FormulaPtr &b);
bool equal(const PathPtr &a, const PathPtr &b);
int compare(const FormulaPtr &a, const FormulaPtr &b);
int compare(const PathPtr &a, const PathPtr &b);

struct FormulaHash {
  std::size_t operator()(const FormulaPtr &f) const { return f->hash(); }
};
struct FormulaEq {
  bool operator()(const FormulaPtr &a, const FormulaPtr &b) const {
    return equal(a, b);
  }
};
struct FormulaLess {
  bool operator()(const FormulaPtr &a, const FormulaPtr &b) const {
    return compare(a, b) < 0;
  }
};

// True when only Truth/Falsity/Prop/Neg/Diamond/Box (and in paths only
// Step/Test/Choice/Seq/Star) occur.
bool is_core(const FormulaPtr &f);
bool is_core(const PathPtr &p);

// All atoms occurring in the formula, name-ordered.
std::set<Atom> collect_atoms(const FormulaPtr &f);
void collect_atoms(const FormulaPtr &f, std::set<Atom> &out);
void collect_atoms(const PathPtr &p, std::set<Atom> &out);

// All path expressions occurring in the formula (including nested ones),
// deduplicated structurally.
std::vector<PathPtr> collect_paths(const FormulaPtr &f);

} // namespace ldlf
