#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/paction.hpp"

namespace semik {

struct OrbitPartition {
  std::vector<std::vector<int>> classes;  // sorted E indices, ordered by representative
  std::vector<int> reps;                  // minimal index of each class
  std::vector<int> class_of;              // E index -> class, -1 for zero
  bool windowed = false;                  // classes may merge beyond the window
  nlohmann::json to_json(const PartialAction& a) const;
};

OrbitPartition compute_orbits(const PartialAction& a);

struct StabilizerData {
  int d = 0;
  std::vector<int> G_of_d;  // gamma with d in E_{gamma^-1}
  std::vector<int> G_d;     // gamma in G(d) with gamma.d = d
  std::vector<int> generators;
  std::vector<int> coset_of;  // G index -> left coset gamma G_d
  std::vector<int> section;   // coset -> minimal member
  bool windowed = false;
  bool subgroup = true;       // G_d closed under products and inverses in the window
  int cosets() const { return static_cast<int>(section.size()); }
  nlohmann::json to_json(const PartialAction& a) const;
};

StabilizerData stabilizer(const PartialAction& a, int d);

// Xi_d on points (gamma.d, zeta), gamma in G(d), zeta in G.
struct XiPoint {
  int e, zeta;
};
struct XiImage {
  int gamma_coset, tau_coset, mu;
  friend bool operator<(const XiImage& x, const XiImage& y) {
    return std::tie(x.gamma_coset, x.tau_coset, x.mu) < std::tie(y.gamma_coset, y.tau_coset, y.mu);
  }
  friend bool operator==(const XiImage& x, const XiImage& y) {
    return x.gamma_coset == y.gamma_coset && x.tau_coset == y.tau_coset && x.mu == y.mu;
  }
};

class XiBijection {
 public:
  XiBijection(const PartialAction& a, StabilizerData st);

  const std::vector<XiPoint>& points() const { return points_; }
  const std::vector<XiImage>& images() const { return images_; }
  XiImage xi(const XiPoint& p) const;
  XiPoint xi_inv(const XiImage& q) const;
  XiImage w(int g, const XiImage& q) const;  // ([gamma],[tau], r[tau]^-1 g r[g^-1 tau] mu)
  XiImage l(int g, const XiImage& q) const;  // [tau] -> [g tau]

  struct Verdict {
    bool ok = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    void expect(bool c, const std::string& what);
    nlohmann::json to_json(const std::string& name) const;
  };
  Verdict verify_bijection() const;
  Verdict verify_cocycle() const;       // w_gh = w_g o l_g o w_h o l_g^-1, all g, h
  Verdict verify_conjugation() const;   // Xi o lambda_g o Xi^-1 = w_g o l_g
  nlohmann::json to_json() const;

 private:
  int mul(int x, int y) const;
  int gamma_for(int e) const;  // some gamma in G(d) with gamma.d = e

  const PartialAction& a_;
  StabilizerData st_;
  std::vector<XiPoint> points_;
  std::vector<XiImage> images_;
};

// S_d = {s : s^-1 s = s s^-1 = d}; verified to be a group with identity d.
struct LocalGroup {
  int d = 0;
  std::vector<int> elements;
  bool is_group = false;
  nlohmann::json to_json(const InverseSemigroup& s) const;
};
LocalGroup local_group(const InverseSemigroup& s, int d);

nlohmann::json orbit_report(const PartialAction& a, bool verify);

}  // namespace semik
