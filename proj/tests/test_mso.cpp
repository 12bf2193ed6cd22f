#include <doctest.h>

#include <map>
#include <vector>

#include "ldlf/errors.hpp"
#include "ldlf/mso.hpp"
#include "ldlf/rewrite.hpp"
#include "ldlf/semantics.hpp"
#include "ldlf/syntax.hpp"
#include "test_support.hpp"

using namespace ldlf;
using ldlf::testing::FormulaGen;
using ldlf::testing::running_example;

namespace {

std::set<Atom> ab() { return {Atom::make("a"), Atom::make("b")}; }

std::vector<Trace> traces_up_to(std::size_t n) {
  std::vector<Trace> out;
  TraceEnumerator en(ab(), n);
  while (auto t = en.next())
    out.push_back(*t);
  return out;
}

// formulas exercising every translation rule, including the star
// shapes that can revisit a member within one position
std::vector<FormulaPtr> mso_corpus() {
  std::vector<FormulaPtr> out{
      running_example(),
      prop("a"),
      truth(),
      falsity(),
      neg(prop("a")),
      parse("X a"),
      parse("wX a"),
      parse("end"),
      parse("<> a"),
      parse("[] b"),
      parse("a U b"),
      parse("a R b"),
      parse("a & b"),
      parse("a | b"),
      parse("a -> b"),
      parse("<(a)?> b"),
      parse("[(a)?] b"),
      parse("<((a)?)*> b"),
      parse("[((a)? + (b)?)*] a"),
      parse("<(step*)*> a"),
      parse("[(step*)*] b"),
      parse("<((a)? + step)*> b"),
      parse("[((a)? + step)*] b"),
      parse("<(step ; step)*> a"),
      parse("<(a ; b)*> end"),
  };
  FormulaGen gen(60646064, true);
  for (int i = 0; i < 10; ++i)
    out.push_back(gen.formula(2));
  return out;
}

void collect_binders(const MsoPtr &f, std::vector<std::string> &out) {
  if (!f)
    return;
  switch (f->kind()) {
  case MKind::ExistsFO:
  case MKind::ForallFO:
  case MKind::ExistsSO:
  case MKind::ForallSO:
    out.push_back(f->var());
    break;
  default:
    break;
  }
  collect_binders(f->lhs(), out);
  collect_binders(f->rhs(), out);
}

} // namespace

TEST_CASE("st_p of the atomic step is the successor relation") {
  MsoPtr f = st_p("w", "v", step());
  // succ(w, v): w < v with nothing strictly between
  REQUIRE(f->kind() == MKind::And);
  CHECK(f->lhs()->kind() == MKind::Less);
  CHECK(f->lhs()->var() == "w");
  CHECK(f->lhs()->var2() == "v");
  CHECK(f->rhs()->kind() == MKind::Not);

  Trace t = ldlf::testing::accepted_trace();
  for (std::size_t k = 0; k + 1 < t.length(); ++k) {
    Assignment assign;
    assign.v1 = {{"w", k}, {"v", k + 1}};
    CHECK(eval_mso(t, f, assign));
    assign.v1 = {{"w", k + 1}, {"v", k}};
    CHECK_FALSE(eval_mso(t, f, assign));
    assign.v1 = {{"w", k}, {"v", k}};
    CHECK_FALSE(eval_mso(t, f, assign));
  }
}

TEST_CASE("st_p of a trivially true test relates each point to itself") {
  MsoPtr f = st_p("w", "v", test(truth()));
  Trace t = ldlf::testing::accepted_trace();
  for (std::size_t k = 0; k < t.length(); ++k)
    for (std::size_t i = 0; i < t.length(); ++i) {
      Assignment assign;
      assign.v1 = {{"w", k}, {"v", i}};
      CHECK(eval_mso(t, f, assign) == (k == i));
    }
}

TEST_CASE("standard translation matches satisfaction") { // Theorem 1.1
  auto corpus = mso_corpus();
  auto traces = traces_up_to(3);
  for (const auto &f : corpus) {
    CAPTURE(print(f));
    MsoPtr m = st_m("t0", f);
    for (const auto &t : traces)
      for (std::size_t k = 0; k < t.length(); ++k) {
        Assignment assign;
        assign.v1["t0"] = k;
        CHECK(eval_mso(t, m, assign) == sat(t, k, f));
      }
  }
}

TEST_CASE("path translation matches the accessibility relation") { // Thm 1.2
  std::vector<PathPtr> paths{
      step(),
      test(prop("a")),
      seq(test(prop("a")), step()),
      star(step()),
      star(seq(test(prop("a")), step())),
      choice(test(prop("a")), step()),
      star(star(step())),
      seq(step(), step()),
      star(seq(step(), step())),
  };
  auto traces = traces_up_to(3);
  for (const auto &p : paths) {
    CAPTURE(print(p));
    MsoPtr m = st_p("x0", "y0", p);
    for (const auto &t : traces) {
      AccessRelation r = rel(p, t);
      for (std::size_t k = 0; k < t.length(); ++k)
        for (std::size_t d = 0; d < t.length(); ++d) {
          Assignment assign;
          assign.v1 = {{"x0", k}, {"y0", d}};
          CHECK(eval_mso(t, m, assign) == r.at(k, d));
        }
    }
  }
}

TEST_CASE("closure encoding of an atom needs no predicates") {
  MsoEncoding enc = mso_encode("t", prop("a"));
  CHECK(enc.members.empty());
  REQUIRE(enc.formula->kind() == MKind::Member);
  CHECK(enc.formula->var() == "a");
  CHECK(enc.formula->var2() == "t");
}

TEST_CASE("closure encoding of the worked example matches the table") {
  MsoEncoding enc = mso_encode("t", running_example());
  REQUIRE(enc.members.size() == 5);
  FormulaPtr box_b = box(star(step()), prop("b"));
  CHECK(equal(enc.members[0], running_example()));
  CHECK(equal(enc.members[1], diamond(test(box_b), diamond(step(), prop("a")))));
  CHECK(equal(enc.members[2], box_b));
  CHECK(equal(enc.members[3], box(step(), box_b)));
  CHECK(equal(enc.members[4], diamond(step(), prop("a"))));

  // row 0: Q0(x) <-> Q1(x)           (sequence collapses)
  REQUIRE(enc.rows[0]->kind() == MKind::Iff);
  CHECK(enc.rows[0]->rhs()->kind() == MKind::Member);
  CHECK(enc.rows[0]->rhs()->var() == "Q1");
  // row 1: Q1(x) <-> Q2(x) & Q4(x)   (test behaves as conjunction)
  REQUIRE(enc.rows[1]->rhs()->kind() == MKind::And);
  CHECK(enc.rows[1]->rhs()->lhs()->var() == "Q2");
  CHECK(enc.rows[1]->rhs()->rhs()->var() == "Q4");
  // row 2: Q2(x) <-> b(x) & Q3(x)    (box star unfolds)
  REQUIRE(enc.rows[2]->rhs()->kind() == MKind::And);
  CHECK(enc.rows[2]->rhs()->lhs()->var() == "b");
  CHECK(enc.rows[2]->rhs()->rhs()->var() == "Q3");
  // row 3: Q3(x) <-> all v: v = x+1 -> Q2(v)
  CHECK(enc.rows[3]->rhs()->kind() == MKind::ForallFO);
  // row 4: Q4(x) <-> ex v: v = x+1 & a(v)
  CHECK(enc.rows[4]->rhs()->kind() == MKind::ExistsFO);
}

TEST_CASE("closure encoding matches satisfaction") { // Theorem 2
  // Enumeration cost is (2^len)^predicates, so the trace bound shrinks
  // as the encoding grows; beyond 12 predicates evaluation refuses.
  auto corpus = mso_corpus();
  for (const auto &f : corpus) {
    CAPTURE(print(f));
    MsoEncoding enc = mso_encode("t0", f);
    std::size_t max_len = enc.members.size() <= 5   ? 3
                          : enc.members.size() <= 10 ? 2
                                                     : 1;
    if (enc.members.size() > 12) {
      Trace tiny({{}}, ab());
      Assignment assign;
      assign.v1["t0"] = 0;
      CHECK_THROWS_AS(eval_mso(tiny, enc.formula, assign),
                      ResourceLimitError);
      continue;
    }
    auto traces = traces_up_to(max_len);
    for (const auto &t : traces)
      for (std::size_t k = 0; k < t.length(); ++k) {
        Assignment assign;
        assign.v1["t0"] = k;
        CHECK(eval_mso(t, enc.formula, assign) == sat(t, k, f));
      }
  }
}

TEST_CASE("second-order witnesses are found by enumeration") {
  // ex X (X(x) & bound(X, x, x)) with x := 0
  VarGen gen;
  MsoPtr f = exists_so("X", mso_and(member("X", "x"), bound("X", "x", "x", gen)));
  Trace t = ldlf::testing::accepted_trace();
  Assignment assign;
  assign.v1["x"] = 0;
  CHECK(eval_mso(t, f, assign));
}

TEST_CASE("macro expansions agree with their definitions") {
  Trace t = ldlf::testing::accepted_trace(); // length 3
  VarGen gen;
  Assignment assign;
  assign.v1 = {{"x", 0}, {"y", 2}};
  CHECK(eval_mso(t, less("x", "y"), assign));
  CHECK_FALSE(eval_mso(t, eq_fo("x", "y"), assign));
  CHECK(eval_mso(t, neq_fo("x", "y"), assign));
  CHECK_FALSE(eval_mso(t, succ("x", "y", gen), assign));
  assign.v1["y"] = 1;
  CHECK(eval_mso(t, succ("x", "y", gen), assign));
  CHECK(eval_mso(t, first_pos("x", gen), assign));
  CHECK_FALSE(eval_mso(t, last_pos("x", gen), assign));
  assign.v1["x"] = 2;
  CHECK(eval_mso(t, last_pos("x", gen), assign));
  // subset and set equality
  assign.v2 = {{"X", 0b011}, {"Y", 0b111}};
  CHECK(eval_mso(t, subset("X", "Y", gen), assign));
  CHECK_FALSE(eval_mso(t, subset("Y", "X", gen), assign));
  CHECK_FALSE(eval_mso(t, eq_so("X", "Y", gen), assign));
  CHECK(eval_mso(t, neq_so("X", "Y", gen), assign));
}

TEST_CASE("no variable is bound twice in a translation") {
  auto corpus = mso_corpus();
  for (const auto &f : corpus) {
    CAPTURE(print(f));
    for (const MsoPtr &m : {st_m("t0", f), mso_enc("t0", f)}) {
      std::vector<std::string> binders;
      collect_binders(m, binders);
      std::sort(binders.begin(), binders.end());
      CHECK(std::adjacent_find(binders.begin(), binders.end()) ==
            binders.end());
    }
  }
}

TEST_CASE("evaluation limits") {
  std::vector<std::set<Atom>> long_states(7);
  Trace long_trace(std::move(long_states), ab());
  MsoPtr with_so = st_m("t", parse("<> a")); // contains a star
  Assignment assign;
  assign.v1["t"] = 0;
  CHECK_THROWS_AS(eval_mso(long_trace, with_so, assign), ResourceLimitError);

  // first-order-only formulas run on longer traces
  MsoPtr fo_only = st_m("t", parse("X a"));
  CHECK_FALSE(eval_mso(long_trace, fo_only, assign));

  // more than 12 nested second-order quantifiers
  MsoPtr deep = member("Y", "t");
  for (int i = 0; i < 13; ++i)
    deep = exists_so("X" + std::to_string(i), deep);
  Trace tiny({{}}, ab());
  CHECK_THROWS_AS(eval_mso(tiny, deep, assign), ResourceLimitError);

  // unassigned free variables are reported
  CHECK_THROWS_AS(eval_mso(tiny, member("Y", "t"), Assignment{}), ParseError);
}

TEST_CASE("mona output is deterministic and declares the alphabet") {
  FormulaPtr f = running_example();
  MsoPtr m = st_m("t0", f);
  std::string once = emit_mona(m, collect_atoms(f));
  std::string twice = emit_mona(m, collect_atoms(f));
  CHECK(once == twice);
  CHECK(once.rfind("m2l-str;\n", 0) == 0);
  CHECK(once.find("var2 a, b;") != std::string::npos);
  CHECK(once.find("ex2") != std::string::npos);

  // an atomic formula has exactly one membership application
  std::string atom = emit_mona(st_m("t0", prop("a")), collect_atoms(prop("a")));
  std::size_t first = atom.find(" in ");
  CHECK(first != std::string::npos);
  CHECK(atom.find(" in ", first + 1) == std::string::npos);
}

TEST_CASE("mona keywords are renamed with the documented prefix") {
  FormulaPtr f = prop("in"); // a legal atom that collides with a keyword
  std::string text = emit_mona(st_m("t0", f), collect_atoms(f));
  CHECK(text.find("var2 p_in;") != std::string::npos);
  CHECK(text.find("t0 in p_in") != std::string::npos);
}
