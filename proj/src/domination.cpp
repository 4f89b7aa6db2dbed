#include "translucent/domination.hpp"

#include <algorithm>
#include <random>

namespace translucent {

StrategyFamily::StrategyFamily(std::vector<std::vector<std::size_t>> sets) : sets_(std::move(sets)) {
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

StrategyFamily StrategyFamily::full(const Game& game) { return StrategyFamily(game.full_family()); }

bool StrategyFamily::contains(std::size_t player, std::size_t strategy) const {
  return std::binary_search(sets_[player].begin(), sets_[player].end(), strategy);
}

bool StrategyFamily::subset_of(const StrategyFamily& other) const {
  if (sets_.size() != other.sets_.size()) return false;
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (!std::includes(other.sets_[i].begin(), other.sets_[i].end(), sets_[i].begin(),
                       sets_[i].end())) {
      return false;
    }
  }
  return true;
}

std::size_t StrategyFamily::total_size() const {
  std::size_t total = 0;
  for (const auto& s : sets_) total += s.size();
  return total;
}

StrategyFamily StrategyFamily::without(std::size_t player, std::size_t strategy) const {
  StrategyFamily out = *this;
  auto& s = out.sets_[player];
  s.erase(std::remove(s.begin(), s.end(), strategy), s.end());
  return out;
}

const StrategyFamily& DeletionTrace::after(std::size_t k) const {
  return rounds[std::min(k, rounds.size() - 1)];
}

namespace {

std::vector<std::vector<std::size_t>> opponent_sets(const StrategyFamily& family,
                                                    std::size_t player) {
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t j = 0; j < family.player_count(); ++j) {
    if (j != player) sets.push_back(family[j]);
  }
  return sets;
}

struct Range {
  Rational min;
  Rational max;
};

// Min and max of u_player(sigma, τ) over the opponent product.
Range payoff_range(const Game& game, std::size_t player, std::size_t sigma,
                   const std::vector<std::vector<std::size_t>>& opponents) {
  std::optional<Range> range;
  for_each_profile(opponents, [&](const OpponentProfile& others) {
    const Rational& u = game.payoff(with_player(others, player, sigma), player);
    if (!range) {
      range = Range{u, u};
    } else {
      range->min = std::min(range->min, u);
      range->max = std::max(range->max, u);
    }
  });
  return *range;
}

std::vector<std::size_t> pool_for(const Game& game, const StrategyFamily& family, std::size_t player,
                                  DominatorPool pool) {
  if (pool == DominatorPool::kSurviving) return family[player];
  return game.full_family()[player];
}

}  // namespace

std::optional<DominationCertificate> is_minimax_dominated(const Game& game, std::size_t player,
                                                          std::size_t sigma,
                                                          const StrategyFamily& family,
                                                          std::span<const std::size_t> dominator_pool) {
  if (player >= game.player_count() || family.player_count() != game.player_count()) {
    throw InputError("player index out of range");
  }
  if (sigma >= game.strategy_count(player)) throw InputError("strategy not in game");
  auto opponents = opponent_sets(family, player);
  for (const auto& s : opponents) {
    if (s.empty()) throw InputError("empty opponent strategy set");
  }
  const Rational sigma_max = payoff_range(game, player, sigma, opponents).max;
  for (std::size_t candidate : dominator_pool) {
    if (candidate >= game.strategy_count(player)) throw InputError("dominator not in game");
    const Rational candidate_min = payoff_range(game, player, candidate, opponents).min;
    if (candidate_min > sigma_max) {
      return DominationCertificate{player, sigma, candidate, candidate_min, sigma_max, 0};
    }
  }
  return std::nullopt;
}

StrategyFamily nsd_step(const Game& game, const StrategyFamily& family, DominatorPool pool,
                        std::vector<DominationCertificate>* certificates, std::size_t round) {
  std::vector<std::vector<std::size_t>> kept(family.player_count());
  for (std::size_t j = 0; j < family.player_count(); ++j) {
    const auto dominators = pool_for(game, family, j, pool);
    for (std::size_t sigma : family[j]) {
      auto cert = is_minimax_dominated(game, j, sigma, family, dominators);
      if (!cert) {
        kept[j].push_back(sigma);
      } else if (certificates != nullptr) {
        cert->round = round;
        certificates->push_back(*cert);
      }
    }
  }
  return StrategyFamily(std::move(kept));
}

DeletionTrace nsd_fixpoint(const Game& game, DominatorPool pool) {
  DeletionTrace trace;
  trace.rounds.push_back(StrategyFamily::full(game));
  while (true) {
    std::vector<DominationCertificate> certs;
    auto next = nsd_step(game, trace.rounds.back(), pool, &certs, trace.rounds.size());
    if (next == trace.rounds.back()) break;
    trace.rounds.push_back(std::move(next));
    trace.certificates.insert(trace.certificates.end(), certs.begin(), certs.end());
  }
  return trace;
}

SequenceCheck validate_deletion_sequence(const Game& game, std::span<const StrategyFamily> sequence) {
  auto fail = [](std::size_t index, std::string why) {
    return SequenceCheck{false, index, std::move(why)};
  };
  if (sequence.empty()) return fail(0, "empty sequence");
  const auto full = game.full_family();
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const auto& family = sequence[k];
    if (family.player_count() != game.player_count()) return fail(k, "wrong player count");
    for (std::size_t j = 0; j < family.player_count(); ++j) {
      if (family[j].empty()) {
        return fail(k, "player " + std::to_string(j + 1) + " has no strategies left");
      }
      if (family[j].back() >= game.strategy_count(j)) return fail(k, "strategy not in game");
    }
  }
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
    const auto& prev = sequence[k];
    const auto& next = sequence[k + 1];
    if (!next.subset_of(prev) || next == prev) {
      return fail(k + 1, "not a proper subset of the previous family");
    }
    for (std::size_t j = 0; j < prev.player_count(); ++j) {
      for (std::size_t sigma : prev[j]) {
        if (next.contains(j, sigma)) continue;
        if (!is_minimax_dominated(game, j, sigma, prev, full[j])) {
          return fail(k + 1, "player " + std::to_string(j + 1) + " strategy '" +
                                 game.strategy_name(j, sigma) +
                                 "' deleted without a domination certificate");
        }
      }
    }
  }
  const auto& last = sequence.back();
  for (std::size_t j = 0; j < last.player_count(); ++j) {
    for (std::size_t sigma : last[j]) {
      if (is_minimax_dominated(game, j, sigma, last, full[j])) {
        return fail(sequence.size() - 1, "final family still has dominated strategy '" +
                                             game.strategy_name(j, sigma) + "' for player " +
                                             std::to_string(j + 1));
      }
    }
  }
  return {};
}

std::vector<StrategyFamily> random_terminating_sequence(const Game& game, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto full = game.full_family();
  std::vector<StrategyFamily> sequence{StrategyFamily::full(game)};
  while (true) {
    const auto& current = sequence.back();
    std::vector<std::pair<std::size_t, std::size_t>> dominated;
    for (std::size_t j = 0; j < current.player_count(); ++j) {
      for (std::size_t sigma : current[j]) {
        if (is_minimax_dominated(game, j, sigma, current, full[j])) dominated.emplace_back(j, sigma);
      }
    }
    if (dominated.empty()) break;
    // Coin flip per candidate; one forced pick keeps the subset nonempty.
    const std::size_t forced = rng() % dominated.size();
    StrategyFamily next = current;
    for (std::size_t d = 0; d < dominated.size(); ++d) {
      if (d == forced || (rng() & 1U) != 0) next = next.without(dominated[d].first, dominated[d].second);
    }
    sequence.push_back(std::move(next));
  }
  return sequence;
}

bool restricted_dominators_agree(const Game& game) {
  return nsd_fixpoint(game, DominatorPool::kFull).rounds ==
         nsd_fixpoint(game, DominatorPool::kSurviving).rounds;
}

DeletionTrace iterated_strict_dominance(const Game& game) {
  DeletionTrace trace;
  trace.rounds.push_back(StrategyFamily::full(game));
  while (true) {
    const auto& current = trace.rounds.back();
    std::vector<std::vector<std::size_t>> kept(current.player_count());
    std::vector<DominationCertificate> certs;
    for (std::size_t j = 0; j < current.player_count(); ++j) {
      auto opponents = opponent_sets(current, j);
      for (std::size_t sigma : current[j]) {
        std::optional<DominationCertificate> found;
        for (std::size_t candidate : current[j]) {
          if (candidate == sigma) continue;
          std::optional<Rational> margin;
          for_each_profile(opponents, [&](const OpponentProfile& others) {
            Rational gap = game.payoff(with_player(others, j, candidate), j) -
                           game.payoff(with_player(others, j, sigma), j);
            if (!margin || gap < *margin) margin = gap;
          });
          if (*margin > Rational(0)) {
            found = DominationCertificate{j, sigma, candidate, *margin, Rational(0),
                                          trace.rounds.size()};
            break;
          }
        }
        if (found) {
          certs.push_back(*found);
        } else {
          kept[j].push_back(sigma);
        }
      }
    }
    StrategyFamily next(std::move(kept));
    if (next == current) break;
    trace.rounds.push_back(std::move(next));
    trace.certificates.insert(trace.certificates.end(), certs.begin(), certs.end());
  }
  return trace;
}

}  // namespace translucent
