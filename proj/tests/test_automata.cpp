#include <doctest.h>

#include <vector>

#include "ldlf/automata.hpp"
#include "ldlf/errors.hpp"
#include "ldlf/rewrite.hpp"
#include "ldlf/semantics.hpp"
#include "ldlf/syntax.hpp"
#include "test_support.hpp"

using namespace ldlf;
using ldlf::testing::FormulaGen;
using ldlf::testing::running_example;

namespace {

std::set<Atom> ab() { return {Atom::make("a"), Atom::make("b")}; }

Guard guard(std::initializer_list<std::pair<const char *, bool>> conds) {
  Guard g;
  for (const auto &[name, in] : conds)
    g.conditions.emplace(Atom::make(name), in);
  return g;
}

// Hand-entered four-state machine for the worked example: an initial
// state, a sink, a b-seen state, and an accepting all-b state.
Dfa figure_dfa() {
  std::vector<std::vector<std::pair<Guard, int>>> tr(4);
  tr[0] = {{guard({{"b", false}}), 1}, {guard({{"b", true}}), 2}};
  tr[1] = {{Guard{}, 1}};
  tr[2] = {{guard({{"b", false}}), 1},
           {guard({{"b", true}, {"a", false}}), 1},
           {guard({{"b", true}, {"a", true}}), 3}};
  tr[3] = {{guard({{"b", false}}), 1}, {guard({{"b", true}}), 3}};
  return make_dfa(SymbolTable::for_atoms(ab()), {"1", "2", "3", "4"}, 0, {3},
                  std::move(tr));
}

const char *kFigureDot = R"(digraph MONA_DFA {
 rankdir = LR;
 center = true;
 size = "7.5,10.5";
 edge [fontname = Courier];
 node [height = .5, width = .5];
 node [shape = doublecircle]; 4;
 node [shape = circle]; 1 2 3;
 init [shape = plaintext, label = ""];
 init -> 1;
 1 -> 2 [label="~b"];
 1 -> 3 [label="b"];
 3 -> 2 [label="~b"];
 3 -> 2 [label="b & ~a"];
 3 -> 4 [label="b & a"];
 4 -> 2 [label="~b"];
 2 -> 2;
 4 -> 4 [label="b"];
})";

} // namespace

TEST_CASE("the NFA for tt is a single accepting state") {
  Nfa n = afw_to_nfa(build_afw(truth()));
  REQUIRE(n.state_count() == 1);
  CHECK(n.obligation(0).empty());
  CHECK(n.initials() == std::set<int>{0});
  CHECK(n.finals() == std::set<int>{0});
}

TEST_CASE("the worked example NFA exposes the universal obligation") {
  Afw a = build_afw(running_example());
  Nfa n = afw_to_nfa(a);
  // the branch into both successor states of the figure shows up as
  // the obligation set {1,2}
  bool found = false;
  for (std::size_t q = 0; q < n.state_count(); ++q)
    if (n.obligation(static_cast<int>(q)) == std::set<int>{1, 2})
      found = true;
  CHECK(found);
  CHECK(n.finals().size() == 1);

  TraceEnumerator en(ab(), 4);
  while (auto t = en.next())
    CHECK(nfa_accepts(n, *t) == accepts(a, *t));
}

TEST_CASE("NFA acceptance agrees with the direct semantics") {
  FormulaGen gen(555444, true);
  std::vector<Trace> traces;
  TraceEnumerator en(ab(), 4);
  while (auto t = en.next())
    traces.push_back(*t);
  for (int i = 0; i < 25; ++i) {
    FormulaPtr f = gen.formula(3);
    CAPTURE(print(f));
    Nfa n = afw_to_nfa(build_afw(f));
    for (const auto &t : traces)
      CHECK(nfa_accepts(n, t) == models(t, f));
  }
}

TEST_CASE("the figure machine accepts and rejects the worked traces") {
  Dfa d = figure_dfa();
  CHECK(dfa_accepts(d, ldlf::testing::accepted_trace()));
  CHECK_FALSE(dfa_accepts(d, ldlf::testing::rejected_trace()));
  // the sink never accepts
  Atom a = Atom::make("a");
  CHECK_FALSE(dfa_accepts(d, Trace({{a}}, ab())));
  CHECK_FALSE(dfa_accepts(d, Trace({{a}, {a}, {a}}, ab())));
}

TEST_CASE("determinization matches the published four-state machine") {
  Afw a = build_afw(running_example());
  Dfa d = nfa_to_dfa(afw_to_nfa(a));
  CHECK(bounded_language_equal(d, figure_dfa(), ab(), 4));

  Dfa m = minimize_dfa(d);
  CHECK(m.state_count() == 4);
  CHECK(bounded_language_equal(m, figure_dfa(), ab(), 5));
}

TEST_CASE("the DFA for a single atom has three states") {
  Dfa d = nfa_to_dfa(afw_to_nfa(build_afw(prop("a"))));
  CHECK(d.state_count() <= 3);
  Dfa m = minimize_dfa(d);
  CHECK(m.state_count() == 3); // live, accept-done, sink
}

TEST_CASE("minimizing the automaton for tt leaves one accepting state") {
  Dfa m = minimize_dfa(nfa_to_dfa(afw_to_nfa(build_afw(truth()))));
  REQUIRE(m.state_count() == 1);
  CHECK(m.finals() == std::set<int>{0});
}

TEST_CASE("minimization is idempotent and never grows") {
  FormulaGen gen(13131313, true);
  for (int i = 0; i < 20; ++i) {
    FormulaPtr f = gen.formula(3);
    CAPTURE(print(f));
    Dfa d = nfa_to_dfa(afw_to_nfa(build_afw(f)));
    Dfa m1 = minimize_dfa(d);
    Dfa m2 = minimize_dfa(m1);
    CHECK(m1.state_count() <= d.state_count() + 1); // completion may add a sink
    CHECK(m2.state_count() == m1.state_count());
    CHECK(bounded_language_equal(d, m1, ab(), 4));
    CHECK(bounded_language_equal(m1, m2, ab(), 4));
  }
}

TEST_CASE("DFA guards are deterministic and complete per state") {
  FormulaGen gen(777333, true);
  for (int i = 0; i < 15; ++i) {
    Dfa d = nfa_to_dfa(afw_to_nfa(build_afw(gen.formula(3))));
    std::set<Atom> atoms;
    for (std::size_t q = 0; q < d.state_count(); ++q)
      for (const auto &[g, to] : d.outgoing(static_cast<int>(q)))
        for (const auto &[atom, pol] : g.conditions)
          atoms.insert(atom);
    CHECK(atoms.count(Atom::last()) == 0); // guards never mention last
    std::vector<Atom> v(atoms.begin(), atoms.end());
    for (std::size_t q = 0; q < d.state_count(); ++q) {
      for (unsigned bits = 0; bits < (1u << v.size()); ++bits) {
        std::set<Atom> content;
        for (std::size_t k = 0; k < v.size(); ++k)
          if (bits & (1u << k))
            content.insert(v[k]);
        Letter letter(content);
        int matches = 0;
        for (const auto &[g, to] : d.outgoing(static_cast<int>(q)))
          if (g.matches(letter))
            ++matches;
        CHECK(matches == 1);
      }
    }
  }
}

TEST_CASE("language chain from semantics to the minimized DFA") {
  FormulaGen gen(10101, true);
  std::vector<Trace> traces;
  TraceEnumerator en(ab(), 4);
  while (auto t = en.next())
    traces.push_back(*t);
  for (int i = 0; i < 15; ++i) {
    FormulaPtr f = gen.formula(3);
    CAPTURE(print(f));
    Afw a = build_afw(f);
    Nfa n = afw_to_nfa(a);
    Dfa d = nfa_to_dfa(n);
    Dfa m = minimize_dfa(d);
    for (const auto &t : traces) {
      bool expect = models(t, f);
      CHECK(accepts(a, t) == expect);
      CHECK(nfa_accepts(n, t) == expect);
      CHECK(dfa_accepts(d, t) == expect);
      CHECK(dfa_accepts(m, t) == expect);
    }
  }
}

TEST_CASE("random differential between DFA and NFA acceptance") {
  FormulaPtr f = parse("([] (a -> X b)) & <> a");
  Nfa n = afw_to_nfa(build_afw(f));
  Dfa d = nfa_to_dfa(n);
  std::mt19937_64 rng(20240810);
  std::set<Atom> abc{Atom::make("a"), Atom::make("b"), Atom::make("c")};
  for (int i = 0; i < 1000; ++i) {
    Trace t = random_trace(rng, abc, 8);
    CHECK(dfa_accepts(d, t) == nfa_accepts(n, t));
  }
}

TEST_CASE("determinization respects the state cap") {
  FormulaPtr f = parse("(<> a) & (<> b) & (<> c)");
  CHECK_THROWS_AS(nfa_to_dfa(afw_to_nfa(build_afw(f)), 2),
                  ResourceLimitError);
}

TEST_CASE("dfa facts carry final_state and round-trip") {
  Dfa fig = figure_dfa();
  std::string facts = dfa_to_facts(fig);
  CHECK(facts.find("final_state(3).\n") != std::string::npos);
  CHECK(facts.find("prop(0,a).\n") != std::string::npos);
  CHECK(facts.find("initial_state(0).\n") != std::string::npos);

  Dfa back = dfa_from_facts(facts);
  CHECK(dfa_to_facts(back) == facts); // identity up to (stable) ordering
  CHECK(bounded_language_equal(fig, back, ab(), 5));

  // single always-accepting state round-trips
  Dfa top = minimize_dfa(nfa_to_dfa(afw_to_nfa(build_afw(truth()))));
  Dfa top_back = dfa_from_facts(dfa_to_facts(top));
  CHECK(dfa_to_facts(top_back) == dfa_to_facts(top));
}

TEST_CASE("nfa facts include the final obligation") {
  Nfa n = afw_to_nfa(build_afw(running_example()));
  std::string facts = nfa_to_facts(n);
  CHECK(facts.find("final_state(") != std::string::npos);
  CHECK(facts.find("state(0,\"{0}\").\n") != std::string::npos);
}

TEST_CASE("dot import of the published machine shape") {
  Dfa d = dfa_from_dot(kFigureDot);
  CHECK(d.state_count() == 4); // already complete: no extra sink
  CHECK(d.finals().size() == 1);
  CHECK(dfa_accepts(d, ldlf::testing::accepted_trace()));
  CHECK_FALSE(dfa_accepts(d, ldlf::testing::rejected_trace()));
  CHECK(bounded_language_equal(d, figure_dfa(), ab(), 5));
}

TEST_CASE("dot import completes unlabeled letter space with a sink") {
  Dfa d = dfa_from_dot("digraph { q0 [shape=circle]; "
                       "q1 [shape=doublecircle]; q0 -> q1 [label=\"a\"]; }");
  // q1 has no outgoing edges: everything from it must reject
  Atom a = Atom::make("a");
  CHECK(dfa_accepts(d, Trace({{a}}, {a})));
  CHECK_FALSE(dfa_accepts(d, Trace({{}}, {a})));
  CHECK_FALSE(dfa_accepts(d, Trace({{a}, {a}}, {a})));
}

TEST_CASE("dot import validates guards") {
  CHECK_THROWS_AS(
      dfa_from_dot("digraph { q0; q0 -> q0 [label=\"a\"]; "
                   "q0 -> q0 [label=\"a & b\"]; }"),
      ParseError); // overlapping guards
  CHECK_THROWS_AS(dfa_from_dot("graph { }"), ParseError);
  CHECK_THROWS_AS(dfa_from_dot("digraph { q0 -> q0 [label=\"a & ~a\"]; }"),
                  ParseError);
}

TEST_CASE("dot round-trip preserves the bounded language") {
  FormulaGen gen(987654321, true);
  for (int i = 0; i < 20; ++i) {
    FormulaPtr f = gen.formula(3);
    CAPTURE(print(f));
    Dfa d = minimize_dfa(nfa_to_dfa(afw_to_nfa(build_afw(f))));
    Dfa back = dfa_from_dot(dfa_to_dot(d));
    CHECK(bounded_language_equal(d, back, ab(), 4));
  }
}
