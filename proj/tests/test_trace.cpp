#include <doctest.h>

#include "ldlf/errors.hpp"
#include "ldlf/facts.hpp"
#include "ldlf/trace.hpp"
#include "test_support.hpp"

using namespace ldlf;

TEST_CASE("letter_at marks exactly the final position with last") {
  Trace t = ldlf::testing::accepted_trace(); // {b} . {a,b} . {b}
  Atom a = Atom::make("a"), b = Atom::make("b");

  CHECK(t.letter_at(2).contains(b));
  CHECK(t.letter_at(2).contains(Atom::last()));
  CHECK_FALSE(t.letter_at(2).contains(a));

  CHECK(t.letter_at(0).contains(b));
  CHECK_FALSE(t.letter_at(0).contains(Atom::last()));

  Trace rejected = ldlf::testing::rejected_trace(); // {b} . {a} . {b}
  CHECK(rejected.letter_at(1).contains(a));
  CHECK_FALSE(rejected.letter_at(1).contains(b));
  CHECK_FALSE(rejected.letter_at(1).contains(Atom::last()));

  Trace single({{}}, {a});
  CHECK(single.letter_at(0).contains(Atom::last()));

  CHECK_THROWS_AS(t.letter_at(3), std::out_of_range);
}

TEST_CASE("trace construction enforces the invariants") {
  Atom a = Atom::make("a"), b = Atom::make("b");
  CHECK_THROWS_AS(Trace({}, {a}), ParseError);         // empty trace
  CHECK_THROWS_AS(Trace({{b}}, {a}), ParseError);      // outside alphabet
  CHECK_THROWS_AS(Trace({{a}}, {a, Atom::last()}), ParseError);
}

TEST_CASE("enumeration counts and order") {
  Atom a = Atom::make("a"), b = Atom::make("b");

  TraceEnumerator small({a}, 1);
  auto t1 = small.next();
  auto t2 = small.next();
  REQUIRE(t1);
  REQUIRE(t2);
  CHECK(t1->state(0).empty());
  CHECK(t2->state(0).count(a) == 1);
  CHECK_FALSE(small.next().has_value());

  CHECK(TraceEnumerator::count(2, 2) == 20);
  CHECK(TraceEnumerator::count(2, 3) == 84);
  CHECK(TraceEnumerator::count(2, 4) == 340);

  std::size_t seen = 0;
  std::set<std::string> unique;
  TraceEnumerator en({a, b}, 3);
  std::size_t last_len = 1;
  while (auto t = en.next()) {
    ++seen;
    CHECK(t->length() >= last_len); // shortest first
    last_len = t->length();
    unique.insert(write_trace(*t, TraceFormat::Json));
    for (std::size_t i = 0; i < t->length(); ++i)
      CHECK(t->letter_at(i).contains(Atom::last()) == (i + 1 == t->length()));
  }
  CHECK(seen == 84);
  CHECK(unique.size() == 84); // no duplicates

  CHECK_THROWS_AS(TraceEnumerator(std::set<Atom>{
                      Atom::make("a1"), Atom::make("a2"), Atom::make("a3"),
                      Atom::make("a4"), Atom::make("a5"), Atom::make("a6"),
                      Atom::make("a7"), Atom::make("a8"), Atom::make("a9"),
                      Atom::make("b1"), Atom::make("b2"), Atom::make("b3"),
                      Atom::make("b4"), Atom::make("b5"), Atom::make("b6"),
                      Atom::make("b7"), Atom::make("b8")},
                                  1),
                  ResourceLimitError);
}

TEST_CASE("JSON serialization") {
  Atom a = Atom::make("a"), b = Atom::make("b");
  Trace t({{b}, {a, b}}, {a, b});
  CHECK(write_trace(t, TraceFormat::Json) == R"([["b"],["a","b"]])");

  Trace back = read_trace(R"([["b"],["a","b"]])", TraceFormat::Json);
  CHECK(back.length() == 2);
  CHECK(back.state(1).count(a) == 1);

  CHECK_THROWS_AS(read_trace("[]", TraceFormat::Json), ParseError);
  CHECK_THROWS_AS(read_trace("[\"a\"]", TraceFormat::Json), ParseError);
  CHECK_THROWS_AS(read_trace("[[\"a\"", TraceFormat::Json), ParseError);
  CHECK_THROWS_AS(read_trace("[[\"last\"]]", TraceFormat::Json), ParseError);
}

TEST_CASE("JSON round-trip on enumerated traces") {
  TraceEnumerator en({Atom::make("a"), Atom::make("b")}, 3);
  while (auto t = en.next()) {
    Trace back = read_trace(write_trace(*t, TraceFormat::Json),
                            TraceFormat::Json);
    CHECK(back.states() == t->states());
  }
}

TEST_CASE("fact serialization uses the symbol table ids") {
  Trace t = ldlf::testing::accepted_trace(); // {b} . {a,b} . {b}
  std::string facts = write_trace(t, TraceFormat::AspFacts);
  // the table orders user atoms by name, then last: a=0, b=1, last=2
  CHECK(facts == "prop(0,a).\n"
                 "prop(1,b).\n"
                 "prop(2,last).\n"
                 "trace(1,0).\n"
                 "trace(0,1).\n"
                 "trace(1,1).\n"
                 "trace(1,2).\n"
                 "trace(2,2).\n");

  Trace back = read_trace(facts, TraceFormat::AspFacts);
  CHECK(back == t);
}

TEST_CASE("fact round-trip covers empty trailing states") {
  Atom a = Atom::make("a");
  Trace t({{a}, {}, {}}, {a});
  Trace back = read_trace(write_trace(t, TraceFormat::AspFacts),
                          TraceFormat::AspFacts);
  CHECK(back.length() == 3);
  CHECK(back.states() == t.states());
}

TEST_CASE("fact parsing reports malformed input") {
  CHECK_THROWS_AS(read_trace("trace(0,0).", TraceFormat::AspFacts),
                  ParseError); // no symbol table
  CHECK_THROWS_AS(read_trace("prop(0,a).\ntrace(5,0).",
                             TraceFormat::AspFacts),
                  ParseError); // unknown id
  CHECK_THROWS_AS(read_trace("prop(0,a)\n", TraceFormat::AspFacts),
                  ParseError); // missing dot
}

TEST_CASE("trace corpus files are JSON lines") {
  auto traces = read_trace_corpus("# comment\n[[\"a\"]]\n\n[[],[\"a\"]]\n");
  REQUIRE(traces.size() == 2);
  CHECK(traces[0].length() == 1);
  CHECK(traces[1].length() == 2);
  CHECK_THROWS_AS(read_trace_corpus("[[\"a\"]]\nnot json\n"), ParseError);
}

TEST_CASE("random traces are deterministic per seed") {
  std::set<Atom> alpha{Atom::make("a"), Atom::make("b"), Atom::make("c")};
  std::mt19937_64 r1(7), r2(7);
  for (int i = 0; i < 50; ++i) {
    Trace t1 = random_trace(r1, alpha, 8);
    Trace t2 = random_trace(r2, alpha, 8);
    CHECK(t1 == t2);
    CHECK(t1.length() >= 1);
    CHECK(t1.length() <= 8);
  }
}
