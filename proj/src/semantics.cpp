#include "ldlf/semantics.hpp"

#include <stdexcept>

#include "ldlf/rewrite.hpp"

namespace ldlf {

std::set<std::pair<std::size_t, std::size_t>> AccessRelation::pairs() const {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      if (at(k, i))
        out.emplace(k, i);
  return out;
}

const FormulaPtr &Evaluator::core_of(const FormulaPtr &f) {
  auto it = core_cache_.find(f.get());
  if (it != core_cache_.end())
    return it->second;
  FormulaPtr core = is_core(f) ? f : desugar(f);
  return core_cache_.emplace(f.get(), std::move(core)).first->second;
}

const PathPtr &Evaluator::core_of(const PathPtr &p) {
  auto it = core_path_cache_.find(p.get());
  if (it != core_path_cache_.end())
    return it->second;
  PathPtr core = is_core(p) ? p : desugar(p);
  return core_path_cache_.emplace(p.get(), std::move(core)).first->second;
}

bool Evaluator::sat(std::size_t k, const FormulaPtr &f) {
  if (k >= trace_.length())
    throw std::out_of_range("time point " + std::to_string(k) +
                            " outside trace of length " +
                            std::to_string(trace_.length()));
  return sat_core(k, core_of(f));
}

AccessRelation Evaluator::rel(const PathPtr &p) { return rel_core(core_of(p)); }

bool Evaluator::sat_core(std::size_t k, const FormulaPtr &f) {
  std::vector<signed char> *memo = nullptr;
  if (memoize_) {
    memo = &sat_cache_[f.get()];
    if (memo->empty())
      memo->assign(trace_.length(), -1);
    if ((*memo)[k] >= 0)
      return (*memo)[k] != 0;
  }
  bool result = false;
  switch (f->kind()) {
  case FKind::Truth:
    result = true;
    break;
  case FKind::Falsity:
    result = false;
    break;
  case FKind::Prop:
    result = trace_.state(k).count(f->atom()) > 0;
    break;
  case FKind::Neg:
    result = !sat_core(k, f->lhs());
    break;
  case FKind::Diamond: {
    AccessRelation r = rel_core(f->path());
    for (std::size_t i = k; i < trace_.length() && !result; ++i)
      if (r.at(k, i) && sat_core(i, f->lhs()))
        result = true;
    break;
  }
  case FKind::Box: {
    AccessRelation r = rel_core(f->path());
    result = true;
    for (std::size_t i = k; i < trace_.length() && result; ++i)
      if (r.at(k, i) && !sat_core(i, f->lhs()))
        result = false;
    break;
  }
  default:
    throw std::logic_error("sat_core reached a sugared connective");
  }
  if (memo)
    (*memo)[k] = result ? 1 : 0;
  return result;
}

AccessRelation Evaluator::rel_core(const PathPtr &p) {
  if (memoize_) {
    auto it = rel_cache_.find(p.get());
    if (it != rel_cache_.end())
      return it->second;
  }
  std::size_t n = trace_.length();
  AccessRelation r(n);
  switch (p->kind()) {
  case PKind::Step:
    for (std::size_t k = 0; k + 1 < n; ++k)
      r.set(k, k + 1);
    break;
  case PKind::Test:
    for (std::size_t k = 0; k < n; ++k)
      if (sat_core(k, p->formula()))
        r.set(k, k);
    break;
  case PKind::Choice: {
    AccessRelation a = rel_core(p->lhs());
    AccessRelation b = rel_core(p->rhs());
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = k; i < n; ++i)
        if (a.at(k, i) || b.at(k, i))
          r.set(k, i);
    break;
  }
  case PKind::Seq: {
    AccessRelation a = rel_core(p->lhs());
    AccessRelation b = rel_core(p->rhs());
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = k; j < n; ++j)
        if (a.at(k, j))
          for (std::size_t i = j; i < n; ++i)
            if (b.at(j, i))
              r.set(k, i);
    break;
  }
  case PKind::Star: {
    // least fixpoint of R := id  U  R ; base over the finite pair domain
    AccessRelation base = rel_core(p->lhs());
    for (std::size_t k = 0; k < n; ++k)
      r.set(k, k);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = k; j < n; ++j)
          if (r.at(k, j))
            for (std::size_t i = j; i < n; ++i)
              if (base.at(j, i) && !r.at(k, i)) {
                r.set(k, i);
                changed = true;
              }
    }
    break;
  }
  case PKind::PropPath:
    throw std::logic_error("rel_core reached a sugared path");
  }
  if (memoize_)
    rel_cache_.emplace(p.get(), r);
  return r;
}

bool sat(const Trace &t, std::size_t k, const FormulaPtr &f) {
  Evaluator ev(t);
  return ev.sat(k, f);
}

AccessRelation rel(const PathPtr &p, const Trace &t) {
  Evaluator ev(t);
  return ev.rel(p);
}

bool models(const Trace &t, const FormulaPtr &f) {
  Evaluator ev(t);
  return ev.models(f);
}

} // namespace ldlf
