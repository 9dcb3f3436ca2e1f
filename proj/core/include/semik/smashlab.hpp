#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/paction.hpp"
#include "semik/scalar.hpp"

namespace semik {

// e . (alpha^-1 f) := alpha^-1.((alpha.e) f). DomainViolation if alpha.e is undefined.
int bullet(const PartialAction& a, int e, int alpha, int f);

enum class Stage { Raw, StageOne, StageTwo };
const char* to_string(Stage s);

// (zeta, eta) -> sorted non-zero elements of E_{zeta^-1 eta}; G indices as keys.
struct SubsemilatticeFamily {
  Stage stage = Stage::Raw;
  std::map<std::pair<int, int>, std::vector<int>> table;

  const std::vector<int>& at(int zeta, int eta) const;
  std::size_t total() const;
  nlohmann::json to_json(const PartialAction& a) const;
};

enum class AlgTag { A, CalA, KA, KCalA };
const char* to_string(AlgTag t);

// A unit (d, zeta, eta) means d delta_{zeta^-1 eta} (x) e_{zeta,eta} in A_i and
// e_{(d,zeta),(eta^-1 zeta.d, eta)} in the discrete algebra; k holds the K(l^2 E)
// matrix-unit labels of the tensor factors, outermost first.
struct UnitLabel {
  std::vector<std::pair<int, int>> k;
  int d = 0, zeta = 0, eta = 0;
  friend bool operator<(const UnitLabel& x, const UnitLabel& y) {
    return std::tie(x.k, x.d, x.zeta, x.eta) < std::tie(y.k, y.d, y.zeta, y.eta);
  }
  friend bool operator==(const UnitLabel& x, const UnitLabel& y) {
    return x.k == y.k && x.d == y.d && x.zeta == y.zeta && x.eta == y.eta;
  }
};

struct MatrixUnitElement {
  AlgTag tag = AlgTag::A;
  std::map<UnitLabel, Scalar> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const UnitLabel& u, const Scalar& c);
  MatrixUnitElement& operator+=(const MatrixUnitElement& o);
  MatrixUnitElement& operator-=(const MatrixUnitElement& o);
  MatrixUnitElement scaled(const Scalar& c) const;
  friend bool operator==(const MatrixUnitElement& x, const MatrixUnitElement& y) {
    return x.tag == y.tag && x.terms == y.terms;
  }
};

struct SmashConfig {
  std::size_t cap = 100000;  // stage-two states and family elements
  int redundant_len = 4;     // factor sequences enumerated by the RedundantFactor check
  std::size_t sample = 20000;
};

struct CheckOutcome {
  std::string name;
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  nlohmann::json detail;
  void expect(bool cond, const std::string& what);
  nlohmann::json to_json() const;
};

class SmashLab {
 public:
  // sigma and F are G indices of the action's group table. F must be a subgroup,
  // sigma F-invariant and contain 1.
  SmashLab(PartialAction action, std::vector<int> sigma, std::vector<int> F, SmashConfig cfg = {});

  const PartialAction& action() const { return a_; }
  const std::vector<int>& sigma() const { return sigma_; }
  const std::vector<int>& subgroup() const { return F_; }

  // Seeds land in every E_{zeta^-1 eta} that contains them.
  SubsemilatticeFamily raw_from_seeds(const std::vector<int>& seeds) const;
  SubsemilatticeFamily close_stage_one(const SubsemilatticeFamily& raw) const;
  SubsemilatticeFamily close_stage_two(const SubsemilatticeFamily& one) const;
  // Convenience: raw -> stage one -> stage two; the result becomes the lab's family.
  const SubsemilatticeFamily& build(const std::vector<int>& seeds);
  void set_family(SubsemilatticeFamily fam);
  const SubsemilatticeFamily& family() const { return fam_; }

  CheckOutcome check_properties(const SubsemilatticeFamily& fam, bool want_c) const;  // (a), (b), (c)
  CheckOutcome check_redundant_factor(const SubsemilatticeFamily& one) const;
  CheckOutcome check_eff_prime() const;

  // Units of A_i (equivalently of the discrete algebra) for the current family.
  const std::vector<UnitLabel>& units() const { return units_; }
  MatrixUnitElement unit(AlgTag tag, const UnitLabel& u) const;
  MatrixUnitElement mul(const MatrixUnitElement& x, const MatrixUnitElement& y) const;
  MatrixUnitElement star(const MatrixUnitElement& x) const;
  MatrixUnitElement act(int gamma, const MatrixUnitElement& x) const;  // Ad(1 (x) lambda_gamma)

  MatrixUnitElement phi(const MatrixUnitElement& x) const;      // CalA -> KA
  MatrixUnitElement psi(const MatrixUnitElement& x) const;      // CalA -> A
  MatrixUnitElement psi_inv(const MatrixUnitElement& x) const;  // A -> CalA
  MatrixUnitElement id_psi_inv(const MatrixUnitElement& x) const;  // KA -> KCalA
  MatrixUnitElement I(const MatrixUnitElement& x) const;        // CalA -> KCalA
  MatrixUnitElement rho(const MatrixUnitElement& x) const;      // acts on the innermost factor
  MatrixUnitElement rho_flat(const MatrixUnitElement& x) const; // K factor forgotten: CalA -> CalA

  int mobius(int x, int d, const std::vector<int>& poset) const;
  int chain_length() const;                  // L over the union of the family
  int longest_chain(const std::vector<int>& s) const;

  CheckOutcome verify_algebra() const;       // closure, associativity, star laws, F-invariance
  CheckOutcome verify_phi() const;
  CheckOutcome verify_psi() const;
  CheckOutcome verify_irho() const;
  CheckOutcome verify_nilpotent() const;     // detail.min_power
  CheckOutcome verify_conjugation(std::optional<int> f = std::nullopt) const;
  CheckOutcome verify_neumann() const;

  // names: phi, psi, irho, nilpotent, conjugation, neumann, all.
  nlohmann::json report(const std::vector<std::string>& which) const;
  nlohmann::json to_json(const MatrixUnitElement& x) const;

 private:
  std::optional<int> g_mul(int x, int y) const;
  int g_mul_or_throw(int x, int y) const;
  int g_rel(int zeta, int eta) const { return g_mul_or_throw(a_.G.inv(zeta), eta); }  // zeta^-1 eta
  bool in_range(int g, int e) const;  // e in E_g
  std::vector<int> meet_closure(std::vector<int> s) const;
  std::optional<UnitLabel> inner_mul(AlgTag tag, const UnitLabel& x, const UnitLabel& y) const;
  void index_units();
  int partner(const UnitLabel& u) const;  // eta^-1 zeta.d

  PartialAction a_;
  std::vector<int> sigma_, F_;
  SmashConfig cfg_;
  SubsemilatticeFamily fam_;
  std::vector<UnitLabel> units_;
};

SmashLab smashlab_example(const std::string& name, int size = 4);

}  // namespace semik
