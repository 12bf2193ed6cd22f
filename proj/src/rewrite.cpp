#include "ldlf/rewrite.hpp"

#include <cassert>
#include <unordered_set>

#include "ldlf/errors.hpp"

namespace ldlf {

PathPtr desugar(const PathPtr &p) {
  switch (p->kind()) {
  case PKind::Step:
    return p;
  case PKind::Test:
    return test(desugar(p->formula()));
  case PKind::Choice:
    return choice(desugar(p->lhs()), desugar(p->rhs()));
  case PKind::Seq:
    return seq(desugar(p->lhs()), desugar(p->rhs()));
  case PKind::Star:
    return star(desugar(p->lhs()));
  case PKind::PropPath:
    return seq(test(desugar(p->formula())), step());
  }
  return p;
}

FormulaPtr desugar(const FormulaPtr &f) {
  switch (f->kind()) {
  case FKind::Truth:
  case FKind::Falsity:
  case FKind::Prop:
    return f;
  case FKind::Neg:
    return neg(desugar(f->lhs()));
  case FKind::Diamond:
    return diamond(desugar(f->path()), desugar(f->lhs()));
  case FKind::Box:
    return box(desugar(f->path()), desugar(f->lhs()));
  case FKind::And:
    return diamond(test(desugar(f->lhs())), desugar(f->rhs()));
  case FKind::Or:
    return diamond(choice(test(desugar(f->lhs())), test(desugar(f->rhs()))),
                   truth());
  case FKind::Implies:
    return box(test(desugar(f->lhs())), desugar(f->rhs()));
  case FKind::Next:
    return diamond(step(), desugar(f->lhs()));
  case FKind::WeakNext:
    return box(step(), desugar(f->lhs()));
  case FKind::Eventually:
    return diamond(star(step()), desugar(f->lhs()));
  case FKind::Always:
    return box(star(step()), desugar(f->lhs()));
  case FKind::Final:
    return box(step(), falsity());
  case FKind::Until:
    return diamond(star(seq(test(desugar(f->lhs())), step())),
                   desugar(f->rhs()));
  case FKind::Release:
    // (rhs U (lhs & rhs)) | [] rhs, per the derived-operator table
    return desugar(lor(until(f->rhs(), land(f->lhs(), f->rhs())),
                       always(f->rhs())));
  }
  return f;
}

namespace {

PathPtr nnf_path(const PathPtr &p) {
  switch (p->kind()) {
  case PKind::Step:
    return p;
  case PKind::Test:
    return test(nnf(p->formula()));
  case PKind::Choice:
    return choice(nnf_path(p->lhs()), nnf_path(p->rhs()));
  case PKind::Seq:
    return seq(nnf_path(p->lhs()), nnf_path(p->rhs()));
  case PKind::Star:
    return star(nnf_path(p->lhs()));
  case PKind::PropPath:
    return prop_path(nnf(p->formula()));
  }
  return p;
}

FormulaPtr nnf_neg(const FormulaPtr &f) {
  switch (f->kind()) {
  case FKind::Truth:
    return falsity();
  case FKind::Falsity:
    return truth();
  case FKind::Prop:
    return neg(f);
  case FKind::Neg:
    return nnf(f->lhs());
  case FKind::Diamond:
    return box(nnf_path(f->path()), nnf_neg(f->lhs()));
  case FKind::Box:
    return diamond(nnf_path(f->path()), nnf_neg(f->lhs()));
  case FKind::And:
    return lor(nnf_neg(f->lhs()), nnf_neg(f->rhs()));
  case FKind::Or:
    return land(nnf_neg(f->lhs()), nnf_neg(f->rhs()));
  case FKind::Implies:
    return land(nnf(f->lhs()), nnf_neg(f->rhs()));
  case FKind::Next:
    return wnext(nnf_neg(f->lhs()));
  case FKind::WeakNext:
    return next(nnf_neg(f->lhs()));
  case FKind::Eventually:
    return always(nnf_neg(f->lhs()));
  case FKind::Always:
    return eventually(nnf_neg(f->lhs()));
  case FKind::Final:
    return next(truth());
  case FKind::Until:
    return release(nnf_neg(f->lhs()), nnf_neg(f->rhs()));
  case FKind::Release:
    return until(nnf_neg(f->lhs()), nnf_neg(f->rhs()));
  }
  return f;
}

} // namespace

FormulaPtr nnf(const FormulaPtr &f) {
  switch (f->kind()) {
  case FKind::Truth:
  case FKind::Falsity:
  case FKind::Prop:
  case FKind::Final:
    return f;
  case FKind::Neg:
    return nnf_neg(f->lhs());
  case FKind::Diamond:
    return diamond(nnf_path(f->path()), nnf(f->lhs()));
  case FKind::Box:
    return box(nnf_path(f->path()), nnf(f->lhs()));
  case FKind::Next:
    return next(nnf(f->lhs()));
  case FKind::WeakNext:
    return wnext(nnf(f->lhs()));
  case FKind::Eventually:
    return eventually(nnf(f->lhs()));
  case FKind::Always:
    return always(nnf(f->lhs()));
  case FKind::And:
    return land(nnf(f->lhs()), nnf(f->rhs()));
  case FKind::Or:
    return lor(nnf(f->lhs()), nnf(f->rhs()));
  case FKind::Implies:
    // kept as sugar; negation moves into the antecedent's own NNF
    return implies(nnf(f->lhs()), nnf(f->rhs()));
  case FKind::Until:
    return until(nnf(f->lhs()), nnf(f->rhs()));
  case FKind::Release:
    return release(nnf(f->lhs()), nnf(f->rhs()));
  }
  return f;
}

FormulaPtr nnf_core(const FormulaPtr &f) { return nnf(desugar(f)); }

bool is_test_only(const PathPtr &p) {
  switch (p->kind()) {
  case PKind::Step:
    return false;
  case PKind::Test:
    return true;
  case PKind::Choice:
  case PKind::Seq:
    return is_test_only(p->lhs()) && is_test_only(p->rhs());
  case PKind::Star:
    return is_test_only(p->lhs());
  case PKind::PropPath:
    return false; // stands for (f? ; step)
  }
  return false;
}

std::vector<FormulaPtr> closure(const FormulaPtr &f) {
  if (!is_core(f))
    throw UnsupportedError("closure requires a core (desugared) formula");

  std::vector<FormulaPtr> order;
  std::unordered_set<FormulaPtr, FormulaHash, FormulaEq> seen;
  std::vector<FormulaPtr> work;

  auto add = [&](const FormulaPtr &g) {
    if (seen.insert(g).second) {
      order.push_back(g);
      work.push_back(g);
    }
  };

  add(f);
  while (!work.empty()) {
    FormulaPtr g = work.back();
    work.pop_back();

    if (g->kind() != FKind::Neg)
      add(neg(g));

    if (!g->is_modal())
      continue;
    bool dia = g->kind() == FKind::Diamond;
    const PathPtr &rho = g->path();
    const FormulaPtr &psi = g->lhs();
    auto modal = [&](PathPtr p, FormulaPtr arg) {
      return dia ? diamond(std::move(p), std::move(arg))
                 : box(std::move(p), std::move(arg));
    };
    add(psi);
    switch (rho->kind()) {
    case PKind::Step:
      break;
    case PKind::Test:
      add(rho->formula());
      break;
    case PKind::Seq:
      add(modal(rho->lhs(), modal(rho->rhs(), psi)));
      break;
    case PKind::Choice:
      add(modal(rho->lhs(), psi));
      add(modal(rho->rhs(), psi));
      break;
    case PKind::Star:
      add(modal(rho->lhs(), modal(rho, psi)));
      break;
    case PKind::PropPath:
      throw UnsupportedError("closure requires a core (desugared) formula");
    }
  }
  return order;
}

} // namespace ldlf
