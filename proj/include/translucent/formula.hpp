#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "translucent/game.hpp"

namespace translucent {

enum class FormulaKind {
  kTrue,
  kPlay,          // play_i(σ)
  kRat,           // RAT_i
  kRatAll,        // RAT = RAT_1 & ... & RAT_n
  kNot,
  kAnd,
  kBelief,        // B_i
  kCfBelief,      // B*_i
  kCommonBelief,  // CB
  kCommonCfBelief,  // CB*
  kSrat,          // SRAT_i^k, expanded by the checker
  kWrat,          // WRAT_i^k, expanded by the checker
  kCcbr,
};

/// Immutable formula tree; children are shared. Player indices are 0-based.
class Formula {
 public:
  static Formula truth();
  static Formula play(std::size_t player, std::string strategy);
  static Formula rat(std::size_t player);
  static Formula rat_all();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula belief(std::size_t player, Formula operand);
  static Formula cf_belief(std::size_t player, Formula operand);
  static Formula common_belief(Formula operand);
  static Formula common_cf_belief(Formula operand);
  static Formula srat(std::size_t player, std::size_t level);
  static Formula wrat(std::size_t player, std::size_t level);
  static Formula ccbr();

  FormulaKind kind() const { return kind_; }
  std::size_t player() const { return player_; }
  const std::string& strategy() const { return strategy_; }
  std::size_t level() const { return level_; }
  const Formula& operand() const { return *lhs_; }
  const Formula& lhs() const { return *lhs_; }
  const Formula& rhs() const { return *rhs_; }

  /// Concrete syntax that parses back to an equal formula.
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(FormulaKind kind) : kind_(kind) {}

  FormulaKind kind_;
  std::size_t player_ = 0;
  std::string strategy_;
  std::size_t level_ = 0;
  std::shared_ptr<const Formula> lhs_;
  std::shared_ptr<const Formula> rhs_;
};

/// Parses the ASCII formula grammar. Unary operators bind tighter than '&',
/// which is left-associative. Throws ParseError with the offending position.
Formula parse_formula(std::string_view text);
/// Same, then checks players and strategy names against `game`.
Formula parse_formula(std::string_view text, const Game& game);

/// Throws InputError if a player or strategy name does not exist in `game`.
void validate_formula(const Formula& formula, const Game& game);

}  // namespace translucent
