#include <doctest.h>

#include <algorithm>
#include <array>

#include "translucent/domination.hpp"
#include "translucent/random.hpp"

using namespace translucent;

namespace {

const std::vector<std::size_t> kNoPool;

std::vector<std::size_t> all_of(const Game& g, std::size_t i) {
  std::vector<std::size_t> out(g.strategy_count(i));
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = s;
  return out;
}

// Direct evaluation of min/max over the opponents' part of a family.
std::pair<Rational, Rational> min_max(const Game& g, std::size_t i, std::size_t s, const StrategyFamily& family) {
  std::vector<std::vector<std::size_t>> sets = family.sets();
  sets[i] = {s};
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  for_each_profile(sets, [&](const Profile& p) {
    const Rational& v = g.payoff(p, i);
    if (!lo || v < *lo) lo = v;
    if (!hi || v > *hi) hi = v;
  });
  return {*lo, *hi};
}

bool dominated_oracle(const Game& g, std::size_t i, std::size_t s, const StrategyFamily& family) {
  const Rational worst_case_max = min_max(g, i, s, family).second;
  for (std::size_t d = 0; d < g.strategy_count(i); ++d) {
    if (min_max(g, i, d, family).first > worst_case_max) return true;
  }
  return false;
}

StrategyFamily fam(std::vector<std::vector<std::size_t>> sets) { return StrategyFamily(std::move(sets)); }

}  // namespace

TEST_CASE("minimax domination examples") {
  const Game ladder3 = ladder_game(3, Rational(1, 2));
  const auto pool = all_of(ladder3, 0);
  auto cert = is_minimax_dominated(ladder3, 0, 0, StrategyFamily::full(ladder3), pool);
  REQUIRE(cert.has_value());
  CHECK(cert->dominator == 1);
  CHECK(cert->dominator_min == Rational(3, 2));
  CHECK(cert->dominated_max == Rational(1));

  const Game pd = translucent_pd(1, 5);
  CHECK_FALSE(is_minimax_dominated(pd, 0, 0, StrategyFamily::full(pd), all_of(pd, 0)).has_value());
  CHECK_FALSE(is_minimax_dominated(pd, 0, 1, StrategyFamily::full(pd), all_of(pd, 0)).has_value());

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Game g = random_game(seed);
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      for (std::size_t s = 0; s < g.strategy_count(i); ++s) {
        const std::array<std::size_t, 1> self{s};
        CHECK_FALSE(is_minimax_dominated(g, i, s, StrategyFamily::full(g), self).has_value());
      }
    }
  }
}

TEST_CASE("minimax domination input errors") {
  const Game pd = translucent_pd(1, 5);
  CHECK_THROWS_AS(is_minimax_dominated(pd, 0, 0, fam({{0, 1}, {}}), all_of(pd, 0)), InputError);
  CHECK_THROWS_AS(is_minimax_dominated(pd, 0, 7, StrategyFamily::full(pd), all_of(pd, 0)), InputError);
  // The player's own slot is irrelevant, even when empty.
  CHECK_NOTHROW(is_minimax_dominated(pd, 0, 0, fam({{}, {0, 1}}), all_of(pd, 0)));
  CHECK_FALSE(is_minimax_dominated(pd, 0, 0, StrategyFamily::full(pd), kNoPool).has_value());
}

TEST_CASE("domination agrees with direct min/max evaluation") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Game g = random_game(seed);
    const StrategyFamily full = StrategyFamily::full(g);
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      for (std::size_t s = 0; s < g.strategy_count(i); ++s) {
        auto cert = is_minimax_dominated(g, i, s, full, all_of(g, i));
        CHECK(cert.has_value() == dominated_oracle(g, i, s, full));
        if (cert) {
          CHECK(cert->dominator_min == min_max(g, i, cert->dominator, full).first);
          CHECK(cert->dominated_max == min_max(g, i, s, full).second);
          // First valid dominator in list order.
          for (std::size_t d = 0; d < cert->dominator; ++d) {
            CHECK_FALSE(min_max(g, i, d, full).first > cert->dominated_max);
          }
        }
      }
    }
  }
}

TEST_CASE("nsd_step examples") {
  const Game ladder3 = ladder_game(3, Rational(1, 2));
  CHECK(nsd_step(ladder3, StrategyFamily::full(ladder3)) == fam({{1, 2}, {1, 2}}));
  const Game pd = translucent_pd(1, 5);
  CHECK(nsd_step(pd, StrategyFamily::full(pd)) == StrategyFamily::full(pd));
  const Game one = ladder_game(1, 1);
  CHECK(nsd_step(one, StrategyFamily::full(one)) == StrategyFamily::full(one));
}

TEST_CASE("nsd_fixpoint examples") {
  const Game ladder5 = ladder_game(5, Rational(1, 2));
  const DeletionTrace trace = nsd_fixpoint(ladder5);
  CHECK(trace.round_count() == 4);
  CHECK(trace.final_family() == fam({{4}, {4}}));
  CHECK(trace.after(1) == fam({{1, 2, 3, 4}, {1, 2, 3, 4}}));
  CHECK(trace.after(100) == trace.final_family());

  const Game pd = translucent_pd(1, 5);
  CHECK(nsd_fixpoint(pd).round_count() == 0);
  CHECK(nsd_fixpoint(pd).final_family() == StrategyFamily::full(pd));

  const Game one = ladder_game(1, 1);
  const DeletionTrace trivial = nsd_fixpoint(one);
  CHECK(trivial.round_count() == 0);
  CHECK(trivial.rounds.size() == 1);
  CHECK(trivial.certificates.empty());
}

TEST_CASE("ladder certificates over every round") {
  const Rational p(1, 2);
  for (std::int64_t k = 2; k <= 7; ++k) {
    const DeletionTrace trace = nsd_fixpoint(ladder_game(k, p));
    CHECK(trace.round_count() == static_cast<std::size_t>(k - 1));
    CHECK(trace.certificates.size() == static_cast<std::size_t>(2 * (k - 1)));
    for (const auto& c : trace.certificates) {
      // Round r deletes announcement r with r+1 as dominator: min r + p > max r.
      CHECK(c.deleted + 1 == c.round);
      CHECK(c.dominator == c.deleted + 1);
      CHECK(c.dominator_min == Rational(static_cast<std::int64_t>(c.round)) + p);
      CHECK(c.dominated_max == Rational(static_cast<std::int64_t>(c.round)));
    }
  }
}

TEST_CASE("deletion sequence validation") {
  const Game ladder4 = ladder_game(4, Rational(1, 2));
  CHECK(validate_deletion_sequence(ladder4, nsd_fixpoint(ladder4).rounds).valid);

  const Game ladder3 = ladder_game(3, Rational(1, 2));
  SUBCASE("partial first round, then maximal") {
    std::vector<StrategyFamily> seq{StrategyFamily::full(ladder3), fam({{1, 2}, {0, 1, 2}})};
    while (true) {
      StrategyFamily next = nsd_step(ladder3, seq.back());
      if (next == seq.back()) break;
      seq.push_back(next);
    }
    CHECK(seq.back() == fam({{2}, {2}}));
    CHECK(validate_deletion_sequence(ladder3, seq).valid);
  }
  SUBCASE("deleting an undominated strategy") {
    std::vector<StrategyFamily> seq{StrategyFamily::full(ladder3), fam({{0, 1}, {0, 1, 2}})};
    const SequenceCheck check = validate_deletion_sequence(ladder3, seq);
    CHECK_FALSE(check.valid);
    CHECK(check.index == 1);
    CHECK(check.violation.find("without a domination certificate") != std::string::npos);
  }
  SUBCASE("stopping early") {
    std::vector<StrategyFamily> seq{StrategyFamily::full(ladder3), fam({{1, 2}, {1, 2}})};
    CHECK_FALSE(validate_deletion_sequence(ladder3, seq).valid);
  }
  SUBCASE("repeating a family") {
    std::vector<StrategyFamily> seq{StrategyFamily::full(ladder3), StrategyFamily::full(ladder3)};
    CHECK_FALSE(validate_deletion_sequence(ladder3, seq).valid);
  }
  SUBCASE("empty sequence") { CHECK_FALSE(validate_deletion_sequence(ladder3, {}).valid); }
  SUBCASE("sequence from an arbitrary starting family") {
    std::vector<StrategyFamily> seq{fam({{0, 2}, {0, 2}}), fam({{2}, {2}})};
    CHECK(validate_deletion_sequence(ladder3, seq).valid);
  }
}

TEST_CASE("random terminating sequences") {
  const Game ladder4 = ladder_game(4, Rational(1, 2));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto seq = random_terminating_sequence(ladder4, seed);
    CHECK(seq.back() == fam({{3}, {3}}));
    CHECK(validate_deletion_sequence(ladder4, seq).valid);
  }
  const Game pd = translucent_pd(1, 5);
  CHECK(random_terminating_sequence(pd, 3).size() == 1);

  const Game ladder3 = ladder_game(3, Rational(1, 2));
  const StrategyFamily expected = nsd_fixpoint(ladder3).final_family();
  bool saw_partial_round = false;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto seq = random_terminating_sequence(ladder3, seed);
    CHECK(seq.back() == expected);
    saw_partial_round = saw_partial_round || seq.size() > 3;
    CHECK(random_terminating_sequence(ladder3, seed) == seq);
  }
  CHECK(saw_partial_round);
}

TEST_CASE("restricted dominator pool") {
  CHECK(restricted_dominators_agree(ladder_game(6, Rational(1, 2))));
  CHECK(restricted_dominators_agree(translucent_pd(1, 5)));
  for (std::uint64_t seed = 0; seed < 200; ++seed) CHECK(restricted_dominators_agree(random_game(seed)));
}

TEST_CASE("strict dominance baseline") {
  const Game pd = translucent_pd(1, 5);
  const DeletionTrace strict = iterated_strict_dominance(pd);
  CHECK(strict.final_family() == fam({{1}, {1}}));
  // Cooperation is strictly dominated classically but never minimax dominated.
  CHECK(nsd_fixpoint(pd).final_family() == StrategyFamily::full(pd));
  for (const auto& c : strict.certificates) {
    CHECK(c.dominator_min == Rational(1));
    CHECK(c.dominated_max == Rational(0));
  }

  const Game ladder3 = ladder_game(3, Rational(1, 2));
  CHECK(nsd_fixpoint(ladder3).final_family().subset_of(iterated_strict_dominance(ladder3).final_family()));
  const Game one = ladder_game(1, 1);
  CHECK(iterated_strict_dominance(one).round_count() == 0);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = random_game(seed);
    const DeletionTrace t = iterated_strict_dominance(g);
    for (const auto& c : t.certificates) {
      // Pointwise advantage over the family of the round that deleted it.
      std::vector<std::vector<std::size_t>> sets = t.rounds[c.round - 1].sets();
      sets[c.player] = {0};
      std::optional<Rational> gap;
      for_each_profile(sets, [&](const Profile& p) {
        Profile d = p;
        Profile s = p;
        d[c.player] = c.dominator;
        s[c.player] = c.deleted;
        const Rational diff = g.payoff(d, c.player) - g.payoff(s, c.player);
        if (!gap || diff < *gap) gap = diff;
      });
      CHECK(*gap == c.dominator_min);
      CHECK(*gap > Rational(0));
    }
  }
}

TEST_CASE("iterated deletion properties on random games") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CAPTURE(seed);
    const Game g = random_game(seed);
    const DeletionTrace trace = nsd_fixpoint(g);
    std::size_t total = 0;
    for (std::size_t i = 0; i < g.player_count(); ++i) total += g.strategy_count(i);
    CHECK(trace.round_count() <= total);

    for (std::size_t r = 0; r + 1 < trace.rounds.size(); ++r) {
      const StrategyFamily& before = trace.rounds[r];
      const StrategyFamily& after = trace.rounds[r + 1];
      CHECK(after.subset_of(before));
      CHECK_FALSE(after == before);
      // Exactly the dominated strategies go.
      for (std::size_t i = 0; i < g.player_count(); ++i) {
        for (std::size_t s : before[i]) {
          CHECK(after.contains(i, s) == !dominated_oracle(g, i, s, before));
        }
        // A maximin strategy of the round survives it.
        std::optional<std::pair<Rational, std::size_t>> best;
        for (std::size_t s : before[i]) {
          const Rational worst = min_max(g, i, s, before).first;
          if (!best || worst > best->first) best.emplace(worst, s);
        }
        CHECK(after.contains(i, best->second));
      }
    }
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      CHECK_FALSE(trace.final_family()[i].empty());
      for (std::size_t s : trace.final_family()[i]) CHECK_FALSE(dominated_oracle(g, i, s, trace.final_family()));
    }
    for (const auto& c : trace.certificates) {
      const StrategyFamily& family = trace.rounds[c.round - 1];
      CHECK(c.dominator_min == min_max(g, c.player, c.dominator, family).first);
      CHECK(c.dominated_max == min_max(g, c.player, c.deleted, family).second);
      CHECK(c.dominator_min > c.dominated_max);
    }
  }
}
