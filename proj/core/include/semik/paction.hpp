#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/group.hpp"

namespace semik {

class Hull;

// A finite group, or a finite window of an infinite group. Element 0 is the
// identity; products leaving a window are reported as nullopt.
class GroupTable {
 public:
  static GroupTable finite(const Group& g);
  static GroupTable window(const Group& g, std::vector<Elem> elements);
  static GroupTable cyclic(int n);
  static GroupTable integers(int radius);
  static GroupTable symmetric(int n);  // n <= 5
  static GroupTable from_json(const nlohmann::json& j);

  int size() const { return static_cast<int>(names_.size()); }
  bool closed() const { return closed_; }
  std::optional<int> mul(int a, int b) const;
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  const std::string& name(int a) const { return names_[static_cast<std::size_t>(a)]; }
  int index(const std::string& name) const;  // -1 if absent
  const Elem& elem(int a) const { return elems_[static_cast<std::size_t>(a)]; }
  int index_of(const Elem& x) const;          // -1 if outside
  std::optional<int> order(int a) const;       // nullopt if it leaves the window
  const std::string& label() const { return label_; }
  nlohmann::json to_json() const;

 private:
  std::string label_;
  bool closed_ = true;
  std::vector<Elem> elems_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mul_;  // -1 = outside window
  std::vector<int> inv_;
};

// Finite meet semilattice with zero at index 0.
class Semilattice {
 public:
  Semilattice() = default;
  Semilattice(std::vector<std::string> names, std::vector<std::vector<int>> meet);
  // Elements as point sets; meet is intersection and must stay in the family.
  static Semilattice from_sets(std::vector<std::string> names, std::vector<std::vector<int>> sets);
  static Semilattice chain(int length);    // e1 > e2 > ... > e_length
  static Semilattice diamond();            // d > e1, e2 > e1e2

  int size() const { return static_cast<int>(names_.size()); }
  int meet(int a, int b) const { return meet_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  bool leq(int a, int b) const { return meet(a, b) == a; }
  const std::string& name(int a) const { return names_[static_cast<std::size_t>(a)]; }
  int index(const std::string& name) const;
  const std::vector<std::string>& names() const { return names_; }
  // Empty when the table is a semilattice with absorbing zero, else a description.
  std::string verify() const;
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> meet_;
};

struct VerifyReport {
  std::size_t checks = 0;
  std::size_t undecided = 0;  // needed data outside a window or truncation
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && failures.size() < 20) failures.push_back(what);
  }
  // A failed check counts as undecided when the data is known to be cut off.
  void expect(bool cond, bool cut_off, const std::string& what) {
    if (!cond && cut_off) {
      ++undecided;
      return;
    }
    expect(cond, what);
  }
  nlohmann::json to_json() const;
};

// G acting partially on E: theta[g][e] = g.e for e in E_{g^-1}, -1 otherwise;
// theta[g][0] = 0.
struct PartialAction {
  GroupTable G;
  Semilattice E;
  std::vector<std::vector<int>> theta;
  std::string label;

  std::optional<int> act(int g, int e) const;
  std::vector<int> domain(int g) const;  // E_{g^-1}, non-zero elements
  bool windowed() const { return !G.closed(); }
  VerifyReport verify() const;
  // Downward closed domains mapped onto E_g: the semilattice form of an
  // invariant regular basis.
  VerifyReport verify_invariant_basis() const;
  nlohmann::json to_json() const;
};

PartialAction action_from_json(const nlohmann::json& j);
// Bundled: trivial, z2_swap, n_window, z4_swap, s3_atoms, chain1..chain3, diamond.
PartialAction example_action(const std::string& name, int size = 4);
std::vector<std::string> example_names();
// Restriction of the partial action of sigma-values on the hull's idempotents.
PartialAction action_from_hull(const Hull& h);

// Finite inverse semigroup with zero at index 0 and sigma into a group table.
struct InverseSemigroup {
  std::vector<std::string> names;
  std::vector<std::vector<int>> mul;
  std::vector<int> sigma;  // -1 for zero
  GroupTable G;

  int size() const { return static_cast<int>(names.size()); }
  int product(int s, int t) const { return mul[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]; }
  int inverse(int s) const;
  bool idempotent(int s) const { return product(s, s) == s; }
  std::vector<int> idempotents() const;
  VerifyReport verify() const;  // inverse semigroup laws, sigma partial homomorphism
  // First non-idempotent s with sigma(s) = 1, if any.
  std::optional<int> idempotent_pure_witness() const;
  nlohmann::json to_json() const;
};

struct Starred {
  PartialAction action;
  std::vector<int> basis;  // E index -> idempotent of S
};

// (*): the partial action of G on the idempotents, V = supp(e) identified with e.
Starred star(const InverseSemigroup& s);
// (**): S~ = {(g, V)} u {0}.
InverseSemigroup starstar(const PartialAction& a);

struct RoundTrip {
  bool isomorphic = false;
  VerifyReport report;
  nlohmann::json map;
  nlohmann::json to_json() const;
};
// rho: S -> S~, s -> (sigma(s), s^-1 s).
RoundTrip roundtrip_check(const InverseSemigroup& s);
// V -> (1, V) conjugates the action to star(starstar(action)).
RoundTrip roundtrip_action(const PartialAction& a);

}  // namespace semik
