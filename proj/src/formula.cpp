#include "translucent/formula.hpp"

#include <cctype>
#include <charconv>

namespace translucent {

Formula Formula::truth() { return Formula(FormulaKind::kTrue); }

Formula Formula::play(std::size_t player, std::string strategy) {
  Formula f(FormulaKind::kPlay);
  f.player_ = player;
  f.strategy_ = std::move(strategy);
  return f;
}

Formula Formula::rat(std::size_t player) {
  Formula f(FormulaKind::kRat);
  f.player_ = player;
  return f;
}

Formula Formula::rat_all() { return Formula(FormulaKind::kRatAll); }

Formula Formula::negation(Formula operand) {
  Formula f(FormulaKind::kNot);
  f.lhs_ = std::make_shared<const Formula>(std::move(operand));
  return f;
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  Formula f(FormulaKind::kAnd);
  f.lhs_ = std::make_shared<const Formula>(std::move(lhs));
  f.rhs_ = std::make_shared<const Formula>(std::move(rhs));
  return f;
}

Formula Formula::belief(std::size_t player, Formula operand) {
  Formula f(FormulaKind::kBelief);
  f.player_ = player;
  f.lhs_ = std::make_shared<const Formula>(std::move(operand));
  return f;
}

Formula Formula::cf_belief(std::size_t player, Formula operand) {
  Formula f(FormulaKind::kCfBelief);
  f.player_ = player;
  f.lhs_ = std::make_shared<const Formula>(std::move(operand));
  return f;
}

Formula Formula::common_belief(Formula operand) {
  Formula f(FormulaKind::kCommonBelief);
  f.lhs_ = std::make_shared<const Formula>(std::move(operand));
  return f;
}

Formula Formula::common_cf_belief(Formula operand) {
  Formula f(FormulaKind::kCommonCfBelief);
  f.lhs_ = std::make_shared<const Formula>(std::move(operand));
  return f;
}

Formula Formula::srat(std::size_t player, std::size_t level) {
  Formula f(FormulaKind::kSrat);
  f.player_ = player;
  f.level_ = level;
  return f;
}

Formula Formula::wrat(std::size_t player, std::size_t level) {
  Formula f(FormulaKind::kWrat);
  f.player_ = player;
  f.level_ = level;
  return f;
}

Formula Formula::ccbr() { return Formula(FormulaKind::kCcbr); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind_ != b.kind_ || a.player_ != b.player_ || a.strategy_ != b.strategy_ ||
      a.level_ != b.level_) {
    return false;
  }
  if ((a.lhs_ == nullptr) != (b.lhs_ == nullptr) || (a.rhs_ == nullptr) != (b.rhs_ == nullptr)) {
    return false;
  }
  if (a.lhs_ && !(*a.lhs_ == *b.lhs_)) return false;
  if (a.rhs_ && !(*a.rhs_ == *b.rhs_)) return false;
  return true;
}

namespace {

std::string unary_operand(const Formula& f) {
  if (f.kind() == FormulaKind::kAnd) return "(" + f.str() + ")";
  return f.str();
}

}  // namespace

std::string Formula::str() const {
  const std::string p = std::to_string(player_ + 1);
  switch (kind_) {
    case FormulaKind::kTrue: return "true";
    case FormulaKind::kPlay: return "play_" + p + "(" + strategy_ + ")";
    case FormulaKind::kRat: return "RAT_" + p;
    case FormulaKind::kRatAll: return "RAT";
    case FormulaKind::kNot: return "!" + unary_operand(*lhs_);
    case FormulaKind::kAnd: {
      std::string rhs = rhs_->kind() == FormulaKind::kAnd ? "(" + rhs_->str() + ")" : rhs_->str();
      return lhs_->str() + " & " + rhs;
    }
    case FormulaKind::kBelief: return "B_" + p + " " + unary_operand(*lhs_);
    case FormulaKind::kCfBelief: return "B*_" + p + " " + unary_operand(*lhs_);
    case FormulaKind::kCommonBelief: return "CB " + unary_operand(*lhs_);
    case FormulaKind::kCommonCfBelief: return "CB* " + unary_operand(*lhs_);
    case FormulaKind::kSrat: return "SRAT_" + p + "^" + std::to_string(level_);
    case FormulaKind::kWrat: return "WRAT_" + p + "^" + std::to_string(level_);
    case FormulaKind::kCcbr: return "CCBR";
  }
  return {};
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '.';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = conjunction();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("formula: " + what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  // Matches a literal; `word` keywords must not run into an identifier.
  bool accept(std::string_view literal, bool word = false) {
    skip_space();
    if (text_.substr(pos_, literal.size()) != literal) return false;
    std::size_t end = pos_ + literal.size();
    if (word && end < text_.size() && is_word_char(text_[end])) return false;
    pos_ = end;
    return true;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::size_t integer() {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc() || ptr == text_.data() + pos_) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  std::size_t player() {
    const std::size_t at = pos_;
    std::size_t p = integer();
    if (p == 0) throw ParseError("formula: players are numbered from 1", at);
    return p - 1;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept("!")) return Formula::negation(unary());
    if (accept("B*_")) {
      std::size_t i = player();
      return Formula::cf_belief(i, unary());
    }
    if (accept("B_")) {
      std::size_t i = player();
      return Formula::belief(i, unary());
    }
    if (accept("CCBR", true)) return Formula::ccbr();
    if (accept("CB*")) return Formula::common_cf_belief(unary());
    if (accept("CB", true)) return Formula::common_belief(unary());
    return atom();
  }

  Formula atom() {
    if (accept("(")) {
      Formula f = conjunction();
      expect(')');
      return f;
    }
    if (accept("true", true)) return Formula::truth();
    if (accept("RAT_")) return Formula::rat(player());
    if (accept("RAT", true)) return Formula::rat_all();
    if (accept("SRAT_") || accept("WRAT_")) {
      const bool strong = text_[pos_ - 5] == 'S';
      std::size_t i = player();
      expect('^');
      std::size_t k = integer();
      return strong ? Formula::srat(i, k) : Formula::wrat(i, k);
    }
    if (accept("play_")) {
      std::size_t i = player();
      expect('(');
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
      if (pos_ == start) fail("expected a strategy name");
      std::string name(text_.substr(start, pos_ - start));
      expect(')');
      return Formula::play(i, std::move(name));
    }
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

Formula parse_formula(std::string_view text, const Game& game) {
  Formula f = parse_formula(text);
  validate_formula(f, game);
  return f;
}

void validate_formula(const Formula& formula, const Game& game) {
  switch (formula.kind()) {
    case FormulaKind::kPlay:
    case FormulaKind::kRat:
    case FormulaKind::kSrat:
    case FormulaKind::kWrat:
    case FormulaKind::kBelief:
    case FormulaKind::kCfBelief:
      if (formula.player() >= game.player_count()) {
        throw InputError("formula: unknown player " + std::to_string(formula.player() + 1));
      }
      break;
    default:
      break;
  }
  if (formula.kind() == FormulaKind::kPlay) game.strategy_index(formula.player(), formula.strategy());
  switch (formula.kind()) {
    case FormulaKind::kNot:
    case FormulaKind::kBelief:
    case FormulaKind::kCfBelief:
    case FormulaKind::kCommonBelief:
    case FormulaKind::kCommonCfBelief:
      validate_formula(formula.operand(), game);
      break;
    case FormulaKind::kAnd:
      validate_formula(formula.lhs(), game);
      validate_formula(formula.rhs(), game);
      break;
    default:
      break;
  }
}

}  // namespace translucent
