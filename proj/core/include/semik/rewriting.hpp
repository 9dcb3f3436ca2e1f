#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/words.hpp"

namespace semik {

enum class OrderKind {
  ShortLex,
  // Wreath order read from the right: compare occurrences of the largest
  // letter, then the blocks between them from the right, recursively.
  WreathRight,
};

struct WordOrder {
  OrderKind kind = OrderKind::ShortLex;
  std::vector<int> rank;  // rank[letter]; smaller rank = smaller letter

  static WordOrder shortlex(int n);
  static WordOrder shortlex(std::vector<int> letters_ascending);
  static WordOrder wreath(std::vector<int> letters_ascending);

  bool less(const Word& a, const Word& b) const;
  std::string str(const Alphabet& a) const;
};

struct Rule {
  Word lhs, rhs;
};

// Partial: completion stopped early; every rule is still a valid consequence
// of the relations, so equal normal forms prove equality.
enum class RsStatus { Confluent, VerifiedToDepth, UserAsserted, Partial };
const char* to_string(RsStatus s);

class RewritingSystem {
 public:
  RewritingSystem() = default;
  RewritingSystem(Alphabet alphabet, WordOrder order, std::vector<Rule> rules, RsStatus status, int depth = 0);

  const Alphabet& alphabet() const { return alphabet_; }
  const WordOrder& order() const { return order_; }
  const std::vector<Rule>& rules() const { return rules_; }
  RsStatus status() const { return status_; }
  int depth() const { return depth_; }

  // Leftmost-innermost reduction: rewrite the redex that ends first.
  Word normal_form(const Word& w, long long step_budget = 1000000) const;
  bool reducible(const Word& w) const;

  nlohmann::json to_json() const;

 private:
  Alphabet alphabet_;
  WordOrder order_;
  std::vector<Rule> rules_;
  RsStatus status_ = RsStatus::Confluent;
  int depth_ = 0;
};

struct KbOptions {
  int max_rules = 200;
  int max_passes = 32;
  int max_rule_length = 64;
  bool return_partial = false;  // return a Partial system instead of throwing
};

// Knuth-Bendix completion. Throws BudgetExceeded with the partial system as
// payload when a budget trips before all critical pairs resolve.
RewritingSystem knuth_bendix(const Alphabet& alphabet, const std::vector<std::pair<Word, Word>>& relations,
                             const WordOrder& order, const KbOptions& opts = {});

}  // namespace semik
