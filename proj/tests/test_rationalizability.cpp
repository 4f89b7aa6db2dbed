#include <doctest.h>

#include <algorithm>

#include "translucent/domination.hpp"
#include "translucent/random.hpp"
#include "translucent/rationalizability.hpp"

using namespace translucent;

namespace {

std::vector<std::vector<std::size_t>> subsets_of(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) s.push_back(k);
    }
    out.push_back(s);
  }
  return out;
}

// Every family of nonempty subsets, in no particular order.
std::vector<WitnessSets> all_families(const Game& g) {
  std::vector<WitnessSets> out{WitnessSets{}};
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    std::vector<WitnessSets> next;
    for (const auto& partial : out) {
      for (const auto& s : subsets_of(g.strategy_count(i))) {
        WitnessSets z = partial;
        z.sets.push_back(s);
        next.push_back(z);
      }
    }
    out = std::move(next);
  }
  return out;
}

// The witness inequality evaluated straight from the definition.
bool inequality_holds(const Game& g, const WitnessSets& z) {
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    for (std::size_t a : z.sets[i]) {
      for (std::size_t b = 0; b < g.strategy_count(i); ++b) {
        std::vector<std::vector<std::size_t>> sa = z.sets;
        std::vector<std::vector<std::size_t>> sb = z.sets;
        sa[i] = {a};
        sb[i] = {b};
        std::optional<Rational> best;
        std::optional<Rational> worst;
        for_each_profile(sa, [&](const Profile& p) {
          if (!best || g.payoff(p, i) > *best) best = g.payoff(p, i);
        });
        for_each_profile(sb, [&](const Profile& p) {
          if (!worst || g.payoff(p, i) < *worst) worst = g.payoff(p, i);
        });
        if (*best < *worst) return false;
      }
    }
  }
  return true;
}

std::vector<Profile> nsd_product(const Game& g) {
  std::vector<Profile> out;
  for_each_profile(nsd_fixpoint(g).final_family().sets(), [&](const Profile& p) { out.push_back(p); });
  return out;
}

}  // namespace

TEST_CASE("witness set checks") {
  const Game ladder3 = ladder_game(3, Rational(1, 2));
  CHECK(check_witness_sets(ladder3, {2, 2}, WitnessSets{{{2}, {2}}}).valid);
  const WitnessCheck low = check_witness_sets(ladder3, {0, 0}, WitnessSets{{{0}, {0}}});
  CHECK_FALSE(low.valid);
  CHECK_FALSE(low.violation.empty());
  CHECK_FALSE(check_witness_sets(ladder3, {1, 2}, WitnessSets{{{2}, {2}}}).valid);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Game g = random_game(seed);
    const WitnessSets full{g.full_family()};
    for (std::size_t flat = 0; flat < g.profile_count(); ++flat) {
      CHECK(check_witness_sets(g, g.profile_at(flat), full).valid == inequality_holds(g, full));
    }
  }
}

TEST_CASE("witness condition matches the definition on every family") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Game g = random_game(seed, {2, 2, 2, 3, -9, 9});
    for (const auto& z : all_families(g)) CHECK(satisfies_witness_condition(g, z).valid == inequality_holds(g, z));
  }
}

TEST_CASE("find_witness_sets") {
  const Game ladder4 = ladder_game(4, Rational(1, 2));
  auto top = find_witness_sets(ladder4, {3, 3});
  REQUIRE(top.has_value());
  CHECK(*top == WitnessSets{{{3}, {3}}});
  CHECK_FALSE(find_witness_sets(ladder4, {0, 0}).has_value());

  const Game one = ladder_game(1, 1);
  auto single = find_witness_sets(one, {0, 0});
  REQUIRE(single.has_value());
  CHECK(*single == WitnessSets{{{0}, {0}}});

  CHECK_THROWS_AS(find_witness_sets(ladder_game(6, 1), {5, 5}), SearchBudgetExceeded);
  CHECK(find_witness_sets(ladder_game(6, 1), {5, 5}, 6).has_value());
  CHECK_THROWS_AS(find_witness_sets(ladder4, {0}), InputError);
}

TEST_CASE("found witnesses are minimal and accepted") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Game g = random_game(seed, {2, 2, 2, 3, -9, 9});
    const auto families = all_families(g);
    for (std::size_t flat = 0; flat < g.profile_count(); ++flat) {
      const Profile p = g.profile_at(flat);
      std::optional<WitnessSets> best;
      for (const auto& z : families) {
        bool member = true;
        for (std::size_t i = 0; i < p.size(); ++i) {
          member = member && std::binary_search(z.sets[i].begin(), z.sets[i].end(), p[i]);
        }
        if (!member || !inequality_holds(g, z)) continue;
        if (!best || std::make_pair(z.total_size(), z) < std::make_pair(best->total_size(), *best)) best = z;
      }
      const auto found = find_witness_sets(g, p);
      CHECK(found.has_value() == best.has_value());
      if (found) {
        CHECK(*found == *best);
        CHECK(check_witness_sets(g, p, *found).valid);
      }
    }
  }
}

TEST_CASE("rationalizable profiles") {
  const auto ladder = minimax_rationalizable_profiles(ladder_game(3, Rational(1, 2)));
  CHECK(ladder.profiles == std::vector<Profile>{{2, 2}});
  CHECK(ladder.witnesses.at({2, 2}) == WitnessSets{{{2}, {2}}});

  const auto pd = minimax_rationalizable_profiles(translucent_pd(1, 5));
  CHECK(pd.profiles == std::vector<Profile>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Game g = random_game(seed);
    CHECK(minimax_rationalizable_profiles(g).profiles == nsd_product(g));
  }
}

TEST_CASE("witness families are closed under union") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Game g = random_game(seed, {2, 2, 2, 3, -9, 9});
    std::vector<WitnessSets> valid;
    for (const auto& z : all_families(g)) {
      if (inequality_holds(g, z)) valid.push_back(z);
    }
    for (const auto& a : valid) {
      for (const auto& b : valid) {
        WitnessSets u;
        for (std::size_t i = 0; i < g.player_count(); ++i) {
          std::vector<std::size_t> merged;
          std::set_union(a.sets[i].begin(), a.sets[i].end(), b.sets[i].begin(), b.sets[i].end(),
                         std::back_inserter(merged));
          u.sets.push_back(merged);
        }
        CHECK(satisfies_witness_condition(g, u).valid);
      }
    }
  }
}

TEST_CASE("parallel enumeration equals the serial reference") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Game g = random_game(seed);
    CHECK(valid_witness_combinations(g, Execution::kParallel) == valid_witness_combinations(g, Execution::kSerial));
    const auto serial = minimax_rationalizable_profiles(g, kDefaultStrategyBudget, Execution::kSerial);
    const auto parallel = minimax_rationalizable_profiles(g, kDefaultStrategyBudget, Execution::kParallel);
    CHECK(serial.profiles == parallel.profiles);
    CHECK(serial.witnesses == parallel.witnesses);
  }
}
