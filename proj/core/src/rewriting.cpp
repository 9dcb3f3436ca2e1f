#include "semik/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "semik/errors.hpp"

namespace semik {

WordOrder WordOrder::shortlex(int n) {
  std::vector<int> asc(static_cast<std::size_t>(n));
  std::iota(asc.begin(), asc.end(), 0);
  return shortlex(std::move(asc));
}

namespace {

std::vector<int> ranks_from(const std::vector<int>& asc) {
  std::vector<int> rank(asc.size(), -1);
  for (std::size_t i = 0; i < asc.size(); ++i) {
    auto l = static_cast<std::size_t>(asc[i]);
    if (l >= asc.size() || rank[l] >= 0) throw Error(ErrorKind::InvalidParams, "letter order is not a permutation");
    rank[l] = static_cast<int>(i);
  }
  return rank;
}

int lex_cmp(const Word& a, const Word& b, const std::vector<int>& rank) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    int ra = rank[static_cast<std::size_t>(a[i])], rb = rank[static_cast<std::size_t>(b[i])];
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

std::vector<Word> split_on(const Word& w, int letter) {
  std::vector<Word> blocks(1);
  for (int x : w) {
    if (x == letter) {
      blocks.emplace_back();
    } else {
      blocks.back().push_back(x);
    }
  }
  return blocks;
}

int wreath_cmp(const Word& a, const Word& b, const std::vector<int>& asc, int top) {
  if (top < 0) return 0;
  const int t = asc[static_cast<std::size_t>(top)];
  auto ca = std::count(a.begin(), a.end(), t);
  auto cb = std::count(b.begin(), b.end(), t);
  if (ca != cb) return ca < cb ? -1 : 1;
  auto ba = split_on(a, t), bb = split_on(b, t);
  for (std::size_t i = ba.size(); i-- > 0;) {
    int c = wreath_cmp(ba[i], bb[i], asc, top - 1);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

WordOrder WordOrder::shortlex(std::vector<int> letters_ascending) {
  WordOrder o;
  o.kind = OrderKind::ShortLex;
  o.rank = ranks_from(letters_ascending);
  return o;
}

WordOrder WordOrder::wreath(std::vector<int> letters_ascending) {
  WordOrder o;
  o.kind = OrderKind::WreathRight;
  o.rank = ranks_from(letters_ascending);
  return o;
}

bool WordOrder::less(const Word& a, const Word& b) const {
  if (kind == OrderKind::ShortLex) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_cmp(a, b, rank) < 0;
  }
  std::vector<int> asc(rank.size());
  for (std::size_t l = 0; l < rank.size(); ++l) asc[static_cast<std::size_t>(rank[l])] = static_cast<int>(l);
  return wreath_cmp(a, b, asc, static_cast<int>(asc.size()) - 1) < 0;
}

std::string WordOrder::str(const Alphabet& a) const {
  std::vector<int> asc(rank.size());
  for (std::size_t l = 0; l < rank.size(); ++l) asc[static_cast<std::size_t>(rank[l])] = static_cast<int>(l);
  std::string s = kind == OrderKind::ShortLex ? "shortlex(" : "wreath-right(";
  for (std::size_t i = 0; i < asc.size(); ++i) s += (i ? "<" : "") + a.name(asc[i]);
  return s + ")";
}

const char* to_string(RsStatus s) {
  switch (s) {
    case RsStatus::Confluent: return "confluent";
    case RsStatus::VerifiedToDepth: return "verified-confluent-to-depth";
    case RsStatus::UserAsserted: return "user-asserted-complete";
    case RsStatus::Partial: return "partial";
  }
  return "?";
}

RewritingSystem::RewritingSystem(Alphabet alphabet, WordOrder order, std::vector<Rule> rules, RsStatus status,
                                 int depth)
    : alphabet_(std::move(alphabet)), order_(std::move(order)), rules_(std::move(rules)), status_(status),
      depth_(depth) {}

namespace {

// Position and rule of the redex ending first; rule index -1 if irreducible.
std::pair<std::size_t, int> find_redex(const Word& w, const std::vector<Rule>& rules, int skip = -1) {
  for (std::size_t end = 1; end <= w.size(); ++end) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (static_cast<int>(r) == skip) continue;
      const Word& l = rules[r].lhs;
      if (l.size() > end) continue;
      if (std::equal(l.begin(), l.end(), w.begin() + static_cast<std::ptrdiff_t>(end - l.size())))
        return {end - l.size(), static_cast<int>(r)};
    }
  }
  return {0, -1};
}

Word reduce(Word w, const std::vector<Rule>& rules, long long budget, int skip = -1) {
  long long steps = 0;
  while (true) {
    auto [pos, r] = find_redex(w, rules, skip);
    if (r < 0) return w;
    if (++steps > budget) throw Error(ErrorKind::NonTerminating, "rewriting exceeded step budget", {{"steps", steps}});
    const Rule& rule = rules[static_cast<std::size_t>(r)];
    Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
    next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + rule.lhs.size()), w.end());
    w = std::move(next);
  }
}

nlohmann::json rules_json(const std::vector<Rule>& rules, const Alphabet& a) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rules) arr.push_back(to_string(r.lhs, a) + " -> " + to_string(r.rhs, a));
  return arr;
}

}  // namespace

Word RewritingSystem::normal_form(const Word& w, long long step_budget) const { return reduce(w, rules_, step_budget); }

bool RewritingSystem::reducible(const Word& w) const { return find_redex(w, rules_).second >= 0; }

nlohmann::json RewritingSystem::to_json() const {
  nlohmann::json j;
  j["order"] = order_.str(alphabet_);
  j["rules"] = rules_json(rules_, alphabet_);
  j["status"] = to_string(status_);
  if (status_ == RsStatus::VerifiedToDepth) j["depth"] = depth_;
  return j;
}

RewritingSystem knuth_bendix(const Alphabet& alphabet, const std::vector<std::pair<Word, Word>>& relations,
                             const WordOrder& order, const KbOptions& opts) {
  constexpr long long kBudget = 100000;
  std::vector<Rule> rules;
  std::deque<std::pair<Word, Word>> pending(relations.begin(), relations.end());

  struct Stop {};
  auto fail = [&](const std::string& why) {
    if (opts.return_partial) throw Stop{};
    throw Error(ErrorKind::BudgetExceeded, "Knuth-Bendix: " + why,
                {{"partial_rules", rules_json(rules, alphabet)}, {"order", order.str(alphabet)}});
  };

  // Adds the pending equations, then interreduces. Returns true if any rule
  // was added.
  auto absorb = [&]() {
    bool added = false;
    while (!pending.empty()) {
      auto [u, v] = pending.front();
      pending.pop_front();
      u = reduce(u, rules, kBudget);
      v = reduce(v, rules, kBudget);
      if (u == v) continue;
      if (order.less(u, v)) std::swap(u, v);
      if (static_cast<int>(u.size()) > opts.max_rule_length) fail("rule longer than max_rule_length");
      rules.push_back({u, v});
      added = true;
      if (static_cast<int>(rules.size()) > opts.max_rules) fail("more than max_rules rules");
      // interreduce against the new rule
      for (std::size_t i = 0; i + 1 < rules.size();) {
        if (find_redex(rules[i].lhs, {rules.back()}).second >= 0) {
          pending.emplace_back(rules[i].lhs, rules[i].rhs);
          rules.erase(rules.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          ++i;
        }
      }
      for (auto& r : rules) r.rhs = reduce(r.rhs, rules, kBudget);
    }
    return added;
  };

  // Runs completion; returns true once all critical pairs resolve.
  auto complete = [&]() {
    absorb();
    for (int pass = 0; pass < opts.max_passes; ++pass) {
      for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
          const Word& li = rules[i].lhs;
          const Word& lj = rules[j].lhs;
          // overlaps: proper suffix of li equals proper prefix of lj
          for (std::size_t k = 1; k < std::min(li.size(), lj.size()); ++k) {
            if (!std::equal(li.end() - static_cast<std::ptrdiff_t>(k), li.end(), lj.begin())) continue;
            Word a = rules[i].rhs;
            a.insert(a.end(), lj.begin() + static_cast<std::ptrdiff_t>(k), lj.end());
            Word b(li.begin(), li.end() - static_cast<std::ptrdiff_t>(k));
            b.insert(b.end(), rules[j].rhs.begin(), rules[j].rhs.end());
            if (reduce(a, rules, kBudget) != reduce(b, rules, kBudget)) pending.emplace_back(a, b);
          }
          // inclusions: lj is a factor of li
          if (i != j && lj.size() <= li.size()) {
            auto it = std::search(li.begin(), li.end(), lj.begin(), lj.end());
            if (it != li.end()) {
              Word b(li.begin(), it);
              b.insert(b.end(), rules[j].rhs.begin(), rules[j].rhs.end());
              b.insert(b.end(), it + static_cast<std::ptrdiff_t>(lj.size()), li.end());
              if (reduce(rules[i].rhs, rules, kBudget) != reduce(b, rules, kBudget))
                pending.emplace_back(rules[i].rhs, b);
            }
          }
        }
      }
      if (pending.empty()) {
        return true;
      }
      absorb();
    }
    fail("critical pairs unresolved after max_passes");
    return false;
  };

  try {
    if (complete()) {
      std::sort(rules.begin(), rules.end(), [&](const Rule& x, const Rule& y) { return order.less(x.lhs, y.lhs); });
      return RewritingSystem(alphabet, order, std::move(rules), RsStatus::Confluent);
    }
  } catch (const Stop&) {
  }
  return RewritingSystem(alphabet, order, std::move(rules), RsStatus::Partial);
}

}  // namespace semik
