#include "ldlf/formula.hpp"

#include <functional>

namespace ldlf {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

FormulaPtr Formula::make(FKind kind, std::optional<Atom> atom, FormulaPtr lhs,
                         FormulaPtr rhs, PathPtr path) {
  std::shared_ptr<Formula> f(new Formula());
  f->kind_ = kind;
  f->atom_ = atom;
  f->lhs_ = std::move(lhs);
  f->rhs_ = std::move(rhs);
  f->path_ = std::move(path);
  std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b1;
  if (f->atom_)
    h = mix(h, std::hash<std::string>()(f->atom_->name()));
  if (f->lhs_)
    h = mix(h, f->lhs_->hash());
  if (f->rhs_)
    h = mix(h, f->rhs_->hash());
  if (f->path_)
    h = mix(h, f->path_->hash());
  f->hash_ = h;
  return f;
}

PathPtr Path::make(PKind kind, PathPtr lhs, PathPtr rhs, FormulaPtr formula) {
  std::shared_ptr<Path> p(new Path());
  p->kind_ = kind;
  p->lhs_ = std::move(lhs);
  p->rhs_ = std::move(rhs);
  p->formula_ = std::move(formula);
  std::size_t h = static_cast<std::size_t>(kind) * 0x85ebca6b + 17;
  if (p->lhs_)
    h = mix(h, p->lhs_->hash());
  if (p->rhs_)
    h = mix(h, p->rhs_->hash());
  if (p->formula_)
    h = mix(h, p->formula_->hash());
  p->hash_ = h;
  return p;
}

FormulaPtr truth() {
  static FormulaPtr f =
      Formula::make(FKind::Truth, std::nullopt, nullptr, nullptr, nullptr);
  return f;
}
FormulaPtr falsity() {
  static FormulaPtr f =
      Formula::make(FKind::Falsity, std::nullopt, nullptr, nullptr, nullptr);
  return f;
}
FormulaPtr prop(Atom a) {
  return Formula::make(FKind::Prop, a, nullptr, nullptr, nullptr);
}
FormulaPtr prop(std::string_view name) { return prop(Atom::make(name)); }
FormulaPtr neg(FormulaPtr f) {
  return Formula::make(FKind::Neg, std::nullopt, std::move(f), nullptr,
                       nullptr);
}
FormulaPtr diamond(PathPtr p, FormulaPtr f) {
  return Formula::make(FKind::Diamond, std::nullopt, std::move(f), nullptr,
                       std::move(p));
}
FormulaPtr box(PathPtr p, FormulaPtr f) {
  return Formula::make(FKind::Box, std::nullopt, std::move(f), nullptr,
                       std::move(p));
}
FormulaPtr land(FormulaPtr a, FormulaPtr b) {
  return Formula::make(FKind::And, std::nullopt, std::move(a), std::move(b),
                       nullptr);
}
FormulaPtr lor(FormulaPtr a, FormulaPtr b) {
  return Formula::make(FKind::Or, std::nullopt, std::move(a), std::move(b),
                       nullptr);
}
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return Formula::make(FKind::Implies, std::nullopt, std::move(a),
                       std::move(b), nullptr);
}
FormulaPtr next(FormulaPtr f) {
  return Formula::make(FKind::Next, std::nullopt, std::move(f), nullptr,
                       nullptr);
}
FormulaPtr wnext(FormulaPtr f) {
  return Formula::make(FKind::WeakNext, std::nullopt, std::move(f), nullptr,
                       nullptr);
}
FormulaPtr eventually(FormulaPtr f) {
  return Formula::make(FKind::Eventually, std::nullopt, std::move(f), nullptr,
                       nullptr);
}
FormulaPtr always(FormulaPtr f) {
  return Formula::make(FKind::Always, std::nullopt, std::move(f), nullptr,
                       nullptr);
}
FormulaPtr final_state() {
  static FormulaPtr f =
      Formula::make(FKind::Final, std::nullopt, nullptr, nullptr, nullptr);
  return f;
}
FormulaPtr until(FormulaPtr a, FormulaPtr b) {
  return Formula::make(FKind::Until, std::nullopt, std::move(a), std::move(b),
                       nullptr);
}
FormulaPtr release(FormulaPtr a, FormulaPtr b) {
  return Formula::make(FKind::Release, std::nullopt, std::move(a),
                       std::move(b), nullptr);
}

PathPtr step() {
  static PathPtr p = Path::make(PKind::Step, nullptr, nullptr, nullptr);
  return p;
}
PathPtr test(FormulaPtr f) {
  return Path::make(PKind::Test, nullptr, nullptr, std::move(f));
}
PathPtr choice(PathPtr a, PathPtr b) {
  return Path::make(PKind::Choice, std::move(a), std::move(b), nullptr);
}
PathPtr seq(PathPtr a, PathPtr b) {
  return Path::make(PKind::Seq, std::move(a), std::move(b), nullptr);
}
PathPtr star(PathPtr p) {
  return Path::make(PKind::Star, std::move(p), nullptr, nullptr);
}
PathPtr prop_path(FormulaPtr f) {
  return Path::make(PKind::PropPath, nullptr, nullptr, std::move(f));
}

bool equal(const FormulaPtr &a, const FormulaPtr &b) {
  if (a.get() == b.get())
    return true;
  if (!a || !b)
    return false;
  if (a->hash() != b->hash() || a->kind() != b->kind())
    return false;
  if (a->kind() == FKind::Prop)
    return a->atom() == b->atom();
  return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs()) &&
         equal(a->path(), b->path());
}

bool equal(const PathPtr &a, const PathPtr &b) {
  if (a.get() == b.get())
    return true;
  if (!a || !b)
    return false;
  if (a->hash() != b->hash() || a->kind() != b->kind())
    return false;
  return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs()) &&
         equal(a->formula(), b->formula());
}

int compare(const FormulaPtr &a, const FormulaPtr &b) {
  if (a.get() == b.get())
    return 0;
  if (!a)
    return -1;
  if (!b)
    return 1;
  if (a->kind() != b->kind())
    return a->kind() < b->kind() ? -1 : 1;
  if (a->kind() == FKind::Prop) {
    const std::string &x = a->atom().name();
    const std::string &y = b->atom().name();
    return x.compare(y);
  }
  if (int c = compare(a->lhs(), b->lhs()))
    return c;
  if (int c = compare(a->rhs(), b->rhs()))
    return c;
  return compare(a->path(), b->path());
}

int compare(const PathPtr &a, const PathPtr &b) {
  if (a.get() == b.get())
    return 0;
  if (!a)
    return -1;
  if (!b)
    return 1;
  if (a->kind() != b->kind())
    return a->kind() < b->kind() ? -1 : 1;
  if (int c = compare(a->lhs(), b->lhs()))
    return c;
  if (int c = compare(a->rhs(), b->rhs()))
    return c;
  return compare(a->formula(), b->formula());
}

bool is_core(const FormulaPtr &f) {
  switch (f->kind()) {
  case FKind::Truth:
  case FKind::Falsity:
  case FKind::Prop:
    return true;
  case FKind::Neg:
    return is_core(f->lhs());
  case FKind::Diamond:
  case FKind::Box:
    return is_core(f->path()) && is_core(f->lhs());
  default:
    return false;
  }
}

bool is_core(const PathPtr &p) {
  switch (p->kind()) {
  case PKind::Step:
    return true;
  case PKind::Test:
    return is_core(p->formula());
  case PKind::Choice:
  case PKind::Seq:
    return is_core(p->lhs()) && is_core(p->rhs());
  case PKind::Star:
    return is_core(p->lhs());
  case PKind::PropPath:
    return false;
  }
  return false;
}

void collect_atoms(const FormulaPtr &f, std::set<Atom> &out) {
  if (!f)
    return;
  if (f->kind() == FKind::Prop) {
    out.insert(f->atom());
    return;
  }
  collect_atoms(f->lhs(), out);
  collect_atoms(f->rhs(), out);
  if (f->path())
    collect_atoms(f->path(), out);
}

void collect_atoms(const PathPtr &p, std::set<Atom> &out) {
  if (!p)
    return;
  collect_atoms(p->lhs(), out);
  collect_atoms(p->rhs(), out);
  collect_atoms(p->formula(), out);
}

std::set<Atom> collect_atoms(const FormulaPtr &f) {
  std::set<Atom> out;
  collect_atoms(f, out);
  return out;
}

namespace {
void collect_paths_rec(const FormulaPtr &f, std::vector<PathPtr> &out);

void collect_paths_rec(const PathPtr &p, std::vector<PathPtr> &out) {
  if (!p)
    return;
  out.push_back(p);
  collect_paths_rec(p->lhs(), out);
  collect_paths_rec(p->rhs(), out);
  if (p->formula())
    collect_paths_rec(p->formula(), out);
}

void collect_paths_rec(const FormulaPtr &f, std::vector<PathPtr> &out) {
  if (!f)
    return;
  if (f->path())
    collect_paths_rec(f->path(), out);
  collect_paths_rec(f->lhs(), out);
  collect_paths_rec(f->rhs(), out);
}
} // namespace

std::vector<PathPtr> collect_paths(const FormulaPtr &f) {
  std::vector<PathPtr> all;
  collect_paths_rec(f, all);
  std::vector<PathPtr> out;
  for (const auto &p : all) {
    bool seen = false;
    for (const auto &q : out)
      if (equal(p, q)) {
        seen = true;
        break;
      }
    if (!seen)
      out.push_back(p);
  }
  return out;
}

} // namespace ldlf
