#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/monoid.hpp"

namespace semik {

enum class Dir { Mul, Div };

// Left multiplication by a generator, or its partial inverse.
struct Step {
  int letter;
  Dir dir;
  friend bool operator==(const Step& a, const Step& b) { return a.letter == b.letter && a.dir == b.dir; }
};

// s_1 o s_2 o ... o s_n; s_n acts first.
using Zigzag = std::vector<Step>;

Zigzag inverse(const Zigzag& z);
Zigzag compose(const Zigzag& s, const Zigzag& t);  // s o t
std::string to_string(const Zigzag& z, const Alphabet& a);

struct HullElement {
  Zigzag zigzag;
  Elem sigma;
  Ideal dom;                  // canonical when the model has exact ideals
  std::vector<bool> on_ball;  // dom restricted to the test ball, from traces
  bool zero = false;
  bool empty_unproven = false;  // empty on the ball but not provably empty
};

struct HullConfig {
  int depth = 2;
  int radius = 6;
  std::size_t max_elements = 200000;
};

class Hull {
 public:
  Hull(ModelPtr model, HullConfig cfg);

  const MonoidModel& model() const { return *model_; }
  const HullConfig& config() const { return cfg_; }
  bool exact() const { return model_->exact_ideals(); }
  const std::vector<std::pair<Elem, Word>>& ball() const { return ball_; }

  HullElement make(const Zigzag& z) const;
  HullElement zero() const;
  HullElement compose(const HullElement& s, const HullElement& t) const;
  HullElement inverse(const HullElement& s) const;
  // s(x) computed by tracing the steps, nullopt if x is outside dom(s).
  std::optional<Elem> apply(const HullElement& s, const Elem& x) const;
  // Equal as partial bijections: exact keys, or ball traces when not exact.
  bool same(const HullElement& s, const HullElement& t) const;
  bool is_idempotent(const HullElement& s) const { return !s.zero && model_->group().is_identity(s.sigma); }

  // Every zigzag with at most depth steps, plus s^-1 s and s s^-1 for each,
  // plus zero. elements() is deduplicated, generated() keeps every zigzag.
  void generate();
  const std::vector<HullElement>& elements() const { return elements_; }
  const std::vector<HullElement>& generated() const { return generated_; }
  std::vector<HullElement> idempotents() const;

  std::string str(const HullElement& s) const;
  nlohmann::json to_json(const HullElement& s) const;
  nlohmann::json bound() const { return {{"depth", cfg_.depth}, {"radius", cfg_.radius}}; }

 private:
  std::vector<long long> dedup_key(const HullElement& s) const;

  ModelPtr model_;
  HullConfig cfg_;
  std::vector<std::pair<Elem, Word>> ball_;
  std::vector<HullElement> elements_, generated_;
};

// Law checks used by the acceptance suite.
struct LawReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  nlohmann::json first_failure;
  nlohmann::json to_json() const;
};
LawReport check_inverse_laws(const Hull& h);       // s = s s^-1 s, s^-1 = s^-1 s s^-1
LawReport check_idempotent_pure(const Hull& h);    // same dom and sigma => same map on the ball

enum class EqVerdict { Equal, Distinct, EqualToRadius };
const char* to_string(EqVerdict v);

struct IdealEquality {
  EqVerdict verdict;
  std::optional<Elem> witness;
  int radius;
  nlohmann::json to_json(const MonoidModel& m) const;
};
IdealEquality ideal_equal(const Hull& h, const Ideal& X, const std::vector<bool>& Xball, const Ideal& Y,
                          const std::vector<bool>& Yball);
IdealEquality ideal_equal(const Hull& h, const HullElement& x, const HullElement& y);

struct CheckResult {
  std::string verdict;  // Holds | Fails | RightLCM | Constructible | FailsToDepth | Inconclusive
  std::string provenance;  // verified-exact | verified-to-bound
  nlohmann::json bound;
  nlohmann::json witness;
  nlohmann::json evidence;
  nlohmann::json to_json() const;
};

CheckResult independence_check(const Hull& h);
CheckResult right_lcm_check(const Hull* h, const MonoidOracle& oracle, int depth, int radius);
CheckResult toeplitz_check(const MonoidModel& m, const GroupWord& g, int depth, int radius);

}  // namespace semik
