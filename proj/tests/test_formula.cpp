#include <algorithm>
#include <set>

#include "doctest.h"

#include "awmc/formula.hpp"

using namespace awmc;

namespace {

// Every constructed formula must normalize into the five core connectives.
void assert_core(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Atom:
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Knows:
      assert_core(f.lhs());
      return;
    case Formula::Kind::And:
      assert_core(f.lhs());
      assert_core(f.rhs());
      return;
  }
  FAIL("non-core connective survived normalization");
}

}  // namespace

TEST_CASE("parsing maps the surface syntax onto the core connectives") {
  CHECK(parse_formula("top") == Formula::top());
  CHECK(parse_formula("K{B} !i") ==
        Formula::knows("B", Formula::negation(Formula::atom("i"))));

  // Awareness is knowing or knowing one's own ignorance.
  Formula kl = Formula::knows("B", Formula::atom("l"));
  Formula expanded = Formula::negation(Formula::conjunction(
      Formula::negation(kl), Formula::negation(Formula::knows("B", Formula::negation(kl)))));
  CHECK(parse_formula("A{B} l") == expanded);
  CHECK(parse_formula("A{B} l") == Formula::aware("B", Formula::atom("l")));
  CHECK(parse_formula("U{B} l") == Formula::unaware("B", Formula::atom("l")));
}

TEST_CASE("operator precedence and associativity") {
  // Unary binds tightest, & over |, | over ->.
  CHECK(parse_formula("!a & b") ==
        Formula::conjunction(Formula::negation(Formula::atom("a")), Formula::atom("b")));
  CHECK(parse_formula("K{B}a & b") ==
        Formula::conjunction(Formula::knows("B", Formula::atom("a")), Formula::atom("b")));
  CHECK(parse_formula("a & b & c") ==
        Formula::conjunction(Formula::conjunction(Formula::atom("a"), Formula::atom("b")),
                             Formula::atom("c")));
  CHECK(parse_formula("a & b | c -> d") ==
        Formula::implication(
            Formula::disjunction(Formula::conjunction(Formula::atom("a"), Formula::atom("b")),
                                 Formula::atom("c")),
            Formula::atom("d")));
  // -> is right-associative.
  CHECK(parse_formula("a -> b -> c") ==
        Formula::implication(Formula::atom("a"),
                             Formula::implication(Formula::atom("b"), Formula::atom("c"))));
  CHECK(parse_formula("(a -> b) -> c") ==
        Formula::implication(Formula::implication(Formula::atom("a"), Formula::atom("b")),
                             Formula::atom("c")));
}

TEST_CASE("parse errors carry offsets and expectations") {
  auto expect_error = [](const char* text, std::size_t offset) {
    try {
      parse_formula(text);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CAPTURE(text);
      CHECK(e.offset == offset);
      CHECK(!e.expected.empty());
    }
  };
  expect_error("", 0);
  expect_error("(a & b", 6);  // unbalanced parentheses
  expect_error("a &", 3);     // formula ended early
  expect_error("K{B a", 4);   // unterminated agent reference
  expect_error("a ) b", 2);   // trailing garbage
  expect_error("@", 0);       // unexpected character

  try {
    parse_formula("(a | b");
    FAIL_CHECK("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::find(e.expected.begin(), e.expected.end(), "')'") != e.expected.end());
  }
}

TEST_CASE("atom collection") {
  CHECK(Formula::top().atoms().empty());
  Formula f = Formula::knows(
      "B", Formula::conjunction(Formula::atom("i"), Formula::atom("l")));
  CHECK(f.atoms() == std::vector<std::string>{"i", "l"});
  // Awareness introduces no atoms of its own.
  CHECK(Formula::aware("B", Formula::atom("l")).atoms() == std::vector<std::string>{"l"});
  CHECK(Formula::aware("B", f).atoms() == f.atoms());
}

TEST_CASE("sugar constructors produce core-only formulas") {
  Formula a = Formula::atom("a"), b = Formula::atom("b");
  for (const Formula& f :
       {Formula::disjunction(a, b), Formula::implication(a, b), Formula::equivalence(a, b),
        Formula::aware("B", a), Formula::unaware("B", b)}) {
    assert_core(f);
  }
}

TEST_CASE("depth-0 and depth-1 enumeration layers") {
  auto d0 = enumerate_formulas({"i"}, {"B"}, 0);
  REQUIRE(d0.size() == 2);
  CHECK(d0[0] == Formula::top());
  CHECK(d0[1] == Formula::atom("i"));

  auto d1 = enumerate_formulas({"i"}, {"B"}, 1);
  Formula top = Formula::top(), i = Formula::atom("i");
  std::vector<Formula> expected = {
      top,
      i,
      Formula::negation(top),
      Formula::negation(i),
      Formula::conjunction(top, top),
      Formula::conjunction(top, i),
      Formula::conjunction(i, top),
      Formula::conjunction(i, i),
      Formula::knows("B", top),
      Formula::knows("B", i),
  };
  REQUIRE(d1.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(d1[k] == expected[k]);
}

TEST_CASE("enumeration counts match an independent recurrence") {
  // Layer sizes: E(0) = 1 + |At|; E(d) = E(d-1) [negation]
  //   + N(d-1)^2 - N(d-2)^2 [conjunctions with a deepest operand]
  //   + |Ag| * E(d-1) [knowledge], with N the cumulative sums.
  auto expected_total = [](std::size_t atoms, std::size_t agents, int depth) {
    std::size_t layer = 1 + atoms, total = layer, prev_total = 0;
    for (int d = 1; d <= depth; ++d) {
      std::size_t next = layer + (total * total - prev_total * prev_total) + agents * layer;
      prev_total = total;
      total += next;
      layer = next;
    }
    return total;
  };

  auto fs = enumerate_formulas({"i", "l"}, {"B", "O"}, 2);
  CHECK(fs.size() == expected_total(2, 2, 2));
  CHECK(fs.size() == 507);

  CHECK(enumerate_formulas({"i"}, {"B"}, 3).size() == expected_total(1, 1, 3));

  // Each formula appears exactly once and respects the depth bound.
  std::set<std::string> seen;
  for (const Formula& f : fs) {
    CHECK(f.depth() <= 2);
    CHECK(seen.insert(f.to_string()).second);
  }
}

TEST_CASE("printing and reparsing is the identity on normalized formulas") {
  for (const Formula& f : enumerate_formulas({"i"}, {"B"}, 3)) {
    if (parse_formula(f.to_string()) != f) {
      CAPTURE(f.to_string());
      FAIL("round trip changed the formula");
    }
  }
  // Spot checks where parenthesization matters.
  for (const char* text :
       {"!(i & l)", "K{B}(i & l)", "i & (l & i)", "!!i", "K{B}K{O}i", "!K{B}!i"}) {
    CHECK(parse_formula(parse_formula(text).to_string()) == parse_formula(text));
  }
}

TEST_CASE("reparsing sugared text is stable") {
  // Sugar elimination happens once: the printed core form reparses to
  // itself.
  for (const char* text : {"a | b", "a -> b", "A{B} a", "U{B} a", "A{B}(a | b) -> U{O}a"}) {
    Formula once = parse_formula(text);
    Formula twice = parse_formula(once.to_string());
    CHECK(once == twice);
    assert_core(once);
  }
}
