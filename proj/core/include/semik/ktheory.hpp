#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/hull.hpp"
#include "semik/orbits.hpp"
#include "semik/paction.hpp"

namespace semik {

struct GroupDescriptor {
  enum class Kind { Trivial, FreeAbelian, FiniteCyclic, Free, Opaque };
  Kind kind = Kind::Trivial;
  int n = 0;
  std::string name;                     // opaque only
  std::vector<std::string> generators;  // opaque only

  static GroupDescriptor trivial() { return {}; }
  static GroupDescriptor free_abelian(int n);
  static GroupDescriptor finite_cyclic(int n);
  static GroupDescriptor free(int n);
  static GroupDescriptor opaque(std::string name, std::vector<std::string> generators);
  static GroupDescriptor from_json(const nlohmann::json& j);

  std::string kind_name() const;  // table key
  std::string str() const;
  nlohmann::json to_json() const;
  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.kind == b.kind && a.n == b.n && a.name == b.name && a.generators == b.generators;
  }
};

// Z^rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... | t_k, every t_i >= 2.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  // Orders may be arbitrary: 0 adds to the rank, 1 and -1 vanish.
  FgAbelianGroup(int rank, std::vector<long long> orders);
  static FgAbelianGroup Z(int rank = 1) { return FgAbelianGroup(rank, {}); }
  static FgAbelianGroup cyclic(long long n) { return FgAbelianGroup(0, {n}); }
  // Z^rows / image of the integer matrix (rows x cols).
  static FgAbelianGroup cokernel(const std::vector<std::vector<long long>>& m, int rows);
  static FgAbelianGroup from_json(const nlohmann::json& j);

  int rank() const { return rank_; }
  const std::vector<long long>& torsion() const { return torsion_; }
  bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
  std::string str() const;  // "0", "Z", "Z^4", "Z/3", "Z^2 + Z/2 + Z/4"
  nlohmann::json to_json() const;

  friend FgAbelianGroup operator+(const FgAbelianGroup& a, const FgAbelianGroup& b);
  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.rank_ == b.rank_ && a.torsion_ == b.torsion_;
  }

 private:
  int rank_ = 0;
  std::vector<long long> torsion_;
};

// Non-zero diagonal of the Smith normal form, in divisibility order.
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m);

struct LedgerEntry {
  std::string statement;
  std::string provenance;  // verified-exact | verified-to-bound | assumed
  nlohmann::json bound;
  std::string source;
  nlohmann::json check;  // the check result behind a verified input, if any
  nlohmann::json to_json() const;
};

struct Summand {
  std::string representative;
  GroupDescriptor group;
  std::string provenance = "verified-exact";
  nlohmann::json bound;
  nlohmann::json to_json() const;
};

struct ResolvedK {
  FgAbelianGroup K0, K1;
  std::string unit_class;
  nlohmann::json to_json() const;
};

enum class Route { InverseSemigroup, PartialCrossedProduct, LeftInverseHull, Semigroup, RightLcm };
const char* to_string(Route r);

// Which Baum-Connes variant the user asserts: K-isomorphism or KK-equivalence.
enum class BcVariant { Coefficients, Strong };

struct KTheoryExpression {
  std::string target;  // the C*-algebra whose K-theory is described
  Route route = Route::InverseSemigroup;
  BcVariant bc = BcVariant::Coefficients;
  std::vector<Summand> summands;
  std::optional<ResolvedK> resolved;
  std::vector<LedgerEntry> assumptions;
  std::vector<LedgerEntry> verified_inputs;
  std::vector<std::string> notes;
  nlohmann::json unresolved = nlohmann::json::array();
  nlohmann::json classification;  // preset-specific statements
  nlohmann::json evidence;         // supporting check results
  nlohmann::json refused;          // routes refused, with the reason

  nlohmann::json to_json() const;
};

struct KTableEntry {
  nlohmann::json K0, K1;  // rank may be an expression in n
  std::string unit;
  std::string citation;
};

class KTable {
 public:
  static KTable builtin();
  static KTable from_json(const nlohmann::json& j);
  static KTable load(const std::string& path);
  // Entries of other replace entries of the same kind.
  void merge(const KTable& other);
  std::optional<ResolvedK> lookup(const GroupDescriptor& g, std::string* citation = nullptr) const;
  const std::map<std::string, KTableEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, KTableEntry> entries_;
};

// Integer expression in n: digits, n, + - * ^ and parentheses.
long long eval_rank_expression(const std::string& text, long long n);

struct FormulaOptions {
  Route route = Route::PartialCrossedProduct;
  BcVariant bc = BcVariant::Coefficients;
  // Needed for Route::Semigroup; anything but Holds is refused.
  const CheckResult* independence = nullptr;
  // Orbits came from a finite inverse semigroup, so a windowed G loses nothing.
  bool window_exact = false;
};

// Descriptor of G_d: trivial, finite cyclic, or opaque with generators.
GroupDescriptor describe_stabilizer(const PartialAction& a, const StabilizerData& st);

// One summand per orbit; IndependenceUnknown for the semigroup route without a
// Holds independence verdict.
KTheoryExpression formula(const PartialAction& a, const OrbitPartition& orbits, const std::vector<StabilizerData>& stabilizers,
                          const FormulaOptions& opt);
KTheoryExpression formula(const PartialAction& a, const FormulaOptions& opt);
// From an inverse semigroup with idempotent pure sigma; checks S_d against G_d.
KTheoryExpression formula(const InverseSemigroup& s, BcVariant bc = BcVariant::Coefficients);
// From the JSON written by orbit_report.
KTheoryExpression formula_from_orbit_report(const nlohmann::json& report, Route route = Route::PartialCrossedProduct);

// Summands resolved through the table when all are covered; the rest stay symbolic.
KTheoryExpression resolve(KTheoryExpression expr, const KTable& table);

// Semigroup C*-algebra of a monoid via its hull: the semigroup route when
// independence holds, otherwise the refusal is recorded and the left inverse
// hull route is emitted instead.
KTheoryExpression semigroup_ktheory(const Hull& h, const std::string& label, BcVariant bc = BcVariant::Coefficients);

struct PresetOptions {
  int depth = 3;
  int radius = 6;
  // Defaults: coefficients for artin, strong elsewhere (cited for bs, one_relator, abelian groups).
  std::optional<BcVariant> bc;
};

// Families: artin, bs, one_relator, numerical, free, abelian, congruence (stub).
KTheoryExpression preset_report(const std::string& family, const nlohmann::json& params, const PresetOptions& opt = {});

}  // namespace semik
