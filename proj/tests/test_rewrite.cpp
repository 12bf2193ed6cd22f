#include <doctest.h>

#include <functional>
#include <unordered_set>

#include "ldlf/rewrite.hpp"
#include "ldlf/syntax.hpp"
#include "test_support.hpp"

using namespace ldlf;
using ldlf::testing::FormulaGen;
using ldlf::testing::running_example;

TEST_CASE("desugar follows the derived-operator table") {
  // a & b  =>  <(a)?> b
  CHECK(equal(desugar(land(prop("a"), prop("b"))),
              diamond(test(prop("a")), prop("b"))));
  // a | b  =>  <(a)? + (b)?> tt
  CHECK(equal(desugar(lor(prop("a"), prop("b"))),
              diamond(choice(test(prop("a")), test(prop("b"))), truth())));
  // a -> b  =>  [(a)?] b
  CHECK(equal(desugar(implies(prop("a"), prop("b"))),
              box(test(prop("a")), prop("b"))));
  // end  =>  [step] ff
  CHECK(equal(desugar(final_state()), box(step(), falsity())));
  CHECK(equal(desugar(next(prop("a"))), diamond(step(), prop("a"))));
  CHECK(equal(desugar(wnext(prop("a"))), box(step(), prop("a"))));
  CHECK(equal(desugar(eventually(prop("a"))),
              diamond(star(step()), prop("a"))));
  CHECK(equal(desugar(always(prop("a"))), box(star(step()), prop("a"))));
  // a U b  =>  <((a)? ; step)*> b
  CHECK(equal(desugar(until(prop("a"), prop("b"))),
              diamond(star(seq(test(prop("a")), step())), prop("b"))));
  CHECK(equal(desugar(parse("a U b")),
              diamond(star(seq(test(prop("a")), step())), prop("b"))));
  // a R b  =>  (b U (a & b)) | [] b, all the way down to core
  FormulaPtr r = desugar(release(prop("a"), prop("b")));
  CHECK(is_core(r));
  CHECK(equal(r, desugar(lor(until(prop("b"), land(prop("a"), prop("b"))),
                             always(prop("b"))))));
  // formula-as-path stands for (formula)? ; step
  CHECK(equal(desugar(diamond(prop_path(prop("a")), prop("b"))),
              diamond(seq(test(prop("a")), step()), prop("b"))));
  // negation survives desugaring for nnf to handle
  CHECK(equal(desugar(neg(land(prop("a"), prop("b")))),
              neg(diamond(test(prop("a")), prop("b")))));
}

TEST_CASE("desugar yields core formulas") {
  FormulaGen gen(99, true);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = gen.formula(4);
    FormulaPtr d = desugar(f);
    CHECK(is_core(d));
    CHECK(equal(desugar(d), d)); // idempotent on core
  }
}

TEST_CASE("nnf pushes negation to the atoms") {
  CHECK(equal(nnf(neg(diamond(step(), prop("a")))),
              box(step(), neg(prop("a")))));
  CHECK(equal(nnf(neg(box(step(), prop("a")))),
              diamond(step(), neg(prop("a")))));
  CHECK(equal(nnf(neg(neg(prop("a")))), prop("a")));
  CHECK(equal(nnf(neg(truth())), falsity()));
  CHECK(equal(nnf(neg(falsity())), truth()));
  // tests inside paths are normalized as well
  CHECK(equal(nnf(diamond(test(neg(neg(prop("a")))), prop("b"))),
              diamond(test(prop("a")), prop("b"))));
}

TEST_CASE("nnf on sugar uses De Morgan and the temporal duals") {
  CHECK(print(nnf(parse("!(a & b)"))) == "!a | !b");
  CHECK(print(nnf(parse("!(a | b)"))) == "!a & !b");
  CHECK(equal(nnf(parse("!X a")), wnext(neg(prop("a")))));
  CHECK(equal(nnf(parse("!wX a")), next(neg(prop("a")))));
  CHECK(equal(nnf(parse("!<> a")), always(neg(prop("a")))));
  CHECK(equal(nnf(parse("![] a")), eventually(neg(prop("a")))));
  CHECK(equal(nnf(parse("!(a U b)")),
              release(neg(prop("a")), neg(prop("b")))));
  CHECK(equal(nnf(parse("!(a R b)")), until(neg(prop("a")), neg(prop("b")))));
}

TEST_CASE("nnf_core leaves negation only above atoms") {
  FormulaGen gen(4242, true);
  std::function<bool(const FormulaPtr &)> ok_f;
  std::function<bool(const PathPtr &)> ok_p = [&](const PathPtr &p) {
    switch (p->kind()) {
    case PKind::Step:
      return true;
    case PKind::Test:
      return ok_f(p->formula());
    case PKind::Choice:
    case PKind::Seq:
      return ok_p(p->lhs()) && ok_p(p->rhs());
    case PKind::Star:
      return ok_p(p->lhs());
    default:
      return false;
    }
  };
  ok_f = [&](const FormulaPtr &f) -> bool {
    switch (f->kind()) {
    case FKind::Truth:
    case FKind::Falsity:
    case FKind::Prop:
      return true;
    case FKind::Neg:
      return f->lhs()->kind() == FKind::Prop;
    case FKind::Diamond:
    case FKind::Box:
      return ok_p(f->path()) && ok_f(f->lhs());
    default:
      return false;
    }
  };
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = gen.formula(4);
    CHECK(ok_f(nnf_core(f)));
  }
}

TEST_CASE("is_test_only") {
  CHECK(is_test_only(test(prop("a"))));
  CHECK(is_test_only(choice(test(prop("a")), test(prop("b")))));
  CHECK(is_test_only(seq(test(prop("a")), test(prop("b")))));
  CHECK(is_test_only(star(test(prop("a")))));
  CHECK_FALSE(is_test_only(step()));
  CHECK_FALSE(is_test_only(seq(test(prop("a")), step())));
  CHECK_FALSE(is_test_only(star(step())));
  CHECK_FALSE(is_test_only(prop_path(prop("a")))); // stands for (a)? ; step
  // the formula inside a test may mention step without the path moving
  CHECK(is_test_only(test(diamond(step(), prop("a")))));
}

TEST_CASE("closure of an atom") {
  auto cl = closure(prop("a"));
  REQUIRE(cl.size() == 2);
  CHECK(equal(cl[0], prop("a")));
  CHECK(equal(cl[1], neg(prop("a"))));
}

TEST_CASE("closure of the worked example contains the listed members") {
  FormulaPtr f = running_example();
  auto cl = closure(f);
  auto has = [&](const FormulaPtr &g) {
    for (const auto &m : cl)
      if (equal(m, g))
        return true;
    return false;
  };
  FormulaPtr box_b = box(star(step()), prop("b"));
  CHECK(has(f));
  CHECK(has(diamond(test(box_b), diamond(step(), prop("a")))));
  CHECK(has(box_b));
  CHECK(has(box(step(), box_b)));
  CHECK(has(diamond(step(), prop("a"))));
  CHECK(has(prop("a")));
  CHECK(has(prop("b")));
  // 7 positive members plus their negations
  std::size_t positives = 0;
  for (const auto &m : cl)
    if (m->kind() != FKind::Neg)
      ++positives;
  CHECK(positives == 7);
  CHECK(cl.size() == 14);
}

TEST_CASE("closure unfolds stars") {
  FormulaPtr f = diamond(star(step()), prop("a"));
  auto cl = closure(f);
  auto has = [&](const FormulaPtr &g) {
    for (const auto &m : cl)
      if (equal(m, g))
        return true;
    return false;
  };
  CHECK(has(f));
  CHECK(has(diamond(step(), f)));
  CHECK(has(prop("a")));
  CHECK(has(neg(f)));
  CHECK(has(neg(diamond(step(), f))));
  CHECK(has(neg(prop("a"))));
}

TEST_CASE("closure properties on random formulas") {
  FormulaGen gen(31337, true);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = nnf_core(gen.formula(3));
    auto cl = closure(f);
    std::unordered_set<FormulaPtr, FormulaHash, FormulaEq> members(cl.begin(),
                                                                   cl.end());
    CHECK(members.size() == cl.size()); // no duplicates
    // members produced by the unfolding rules themselves, as opposed to
    // rule 2's negation images
    std::size_t produced = 0;
    for (const auto &m : cl) {
      if (m->kind() != FKind::Neg) {
        ++produced;
        CHECK(members.count(neg(m))); // rule 2, literally
      } else if (!members.count(m->lhs())) {
        ++produced; // negation that entered directly (e.g. test content)
      }
    }
    CHECK(cl.size() <= 2 * produced);
  }
}

TEST_CASE("closure terminates on nested and test-only stars") {
  CHECK(closure(desugar(parse("<((a)?)*> b"))).size() > 0);
  CHECK(closure(desugar(parse("<(step*)*> a"))).size() > 0);
  CHECK(closure(desugar(parse("<(((a)? + step)*)*> b"))).size() > 0);
  CHECK(closure(desugar(parse("[((a)? + (b)?)*] a"))).size() > 0);
}
