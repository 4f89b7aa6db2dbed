#include <doctest.h>

#include <random>

#include "translucent/formula.hpp"

using namespace translucent;

namespace {

Formula random_formula(std::mt19937_64& rng, int depth) {
  const std::size_t player = rng() % 3;
  const int pick = depth <= 0 ? static_cast<int>(rng() % 6) : static_cast<int>(rng() % 13);
  switch (pick) {
    case 0: return Formula::truth();
    case 1: return Formula::play(player, rng() % 2 ? "C" : "S");
    case 2: return Formula::rat(player);
    case 3: return Formula::rat_all();
    case 4: return Formula::srat(player, rng() % 4);
    case 5: return rng() % 2 ? Formula::wrat(player, rng() % 4) : Formula::ccbr();
    case 6: return Formula::negation(random_formula(rng, depth - 1));
    case 7:
    case 8: return Formula::conjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 9: return Formula::belief(player, random_formula(rng, depth - 1));
    case 10: return Formula::cf_belief(player, random_formula(rng, depth - 1));
    case 11: return Formula::common_belief(random_formula(rng, depth - 1));
    default: return Formula::common_cf_belief(random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("formula grammar examples") {
  CHECK(parse_formula("RAT_1 & B*_1 RAT_2") ==
        Formula::conjunction(Formula::rat(0), Formula::cf_belief(0, Formula::rat(1))));
  const Formula srat = parse_formula("SRAT_1^2");
  CHECK(srat.kind() == FormulaKind::kSrat);
  CHECK(srat.player() == 0);
  CHECK(srat.level() == 2);
  CHECK(parse_formula("CB* RAT") == Formula::common_cf_belief(Formula::rat_all()));
  CHECK(parse_formula("CB RAT") == Formula::common_belief(Formula::rat_all()));
  CHECK(parse_formula("play_2(S)") == Formula::play(1, "S"));
  CHECK(parse_formula("WRAT_3^0") == Formula::wrat(2, 0));
  CHECK(parse_formula("CCBR") == Formula::ccbr());
  CHECK(parse_formula("true") == Formula::truth());
}

TEST_CASE("precedence and associativity") {
  const Formula a = Formula::rat(0);
  const Formula b = Formula::rat(1);
  const Formula c = Formula::truth();
  CHECK(parse_formula("!RAT_1 & RAT_2") == Formula::conjunction(Formula::negation(a), b));
  CHECK(parse_formula("RAT_1 & RAT_2 & true") == Formula::conjunction(Formula::conjunction(a, b), c));
  CHECK(parse_formula("RAT_1 & (RAT_2 & true)") == Formula::conjunction(a, Formula::conjunction(b, c)));
  CHECK(parse_formula("B_1 RAT_1 & RAT_2") == Formula::conjunction(Formula::belief(0, a), b));
  CHECK(parse_formula("B_1 (RAT_1 & RAT_2)") == Formula::belief(0, Formula::conjunction(a, b)));
  CHECK(parse_formula("!!true") == Formula::negation(Formula::negation(c)));
  CHECK(parse_formula("  B*_2   !  play_1( C )  ") ==
        Formula::cf_belief(1, Formula::negation(Formula::play(0, "C"))));
}

TEST_CASE("formula syntax errors report a position") {
  for (const char* bad : {"", "RAT_", "RAT_1 &", "B_1", "play_1(C", "SRAT_1", "SRAT_1^", "(true", "true)",
                          "RAT_1 RAT_2", "CB", "RAT_x", "B*_ RAT"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_formula(bad), ParseError);
  }
  try {
    parse_formula("RAT_1 & ?");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 8);
  }
  CHECK_THROWS_WITH_AS(parse_formula("RAT_0"), doctest::Contains("numbered from 1"), ParseError);
}

TEST_CASE("formulas are checked against the game") {
  const Game pd = translucent_pd(1, 5);
  CHECK_NOTHROW(parse_formula("play_2(S) & RAT_2", pd));
  CHECK_THROWS_AS(parse_formula("RAT_3", pd), InputError);
  CHECK_THROWS_AS(parse_formula("play_1(D)", pd), InputError);
  CHECK_THROWS_AS(parse_formula("B_3 true", pd), InputError);
  CHECK_THROWS_AS(parse_formula("SRAT_4^1", pd), InputError);
}

TEST_CASE("printing round-trips") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 500; ++n) {
    const Formula f = random_formula(rng, 4);
    CAPTURE(f.str());
    CHECK(parse_formula(f.str()) == f);
  }
  CHECK(parse_formula("RAT_1 & B*_1 RAT_2").str() == "RAT_1 & B*_1 RAT_2");
}
