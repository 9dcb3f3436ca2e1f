#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/ktheory.hpp"
#include "semik/paction.hpp"

namespace semik {

using Point = std::vector<long long>;
using Patch = std::vector<Point>;  // sorted, distinct

// Finite subset of Z^n.
struct PointSet {
  int n = 1;
  std::vector<Point> points;  // sorted, distinct

  PointSet() = default;
  PointSet(int dim, std::vector<Point> pts);
  // "0,1,2" in dimension one; "0,0;1,0" or "(0,0),(1,0)" for vectors.
  static PointSet parse(const std::string& text);
  bool contains(const Point& p) const;
  std::size_t size() const { return points.size(); }
  nlohmann::json to_json() const;
};

std::string to_string(const Point& p);
std::string to_string(const Patch& p);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);

// Translation-invariant adjacency: p ~ q when q - p or p - q is a listed step.
struct Adjacency {
  std::vector<Point> steps;
  static Adjacency parse(const std::string& text);
  static Adjacency load(const std::string& path);
  bool adjacent(const Point& p, const Point& q) const;
  bool connected(const Patch& p) const;
};

// Lexicographically minimal point at the origin.
Patch normalize(Patch p);

// [a, P, b] with a, b in P, stored translated so that min P = 0.
struct PatchTriple {
  Point a, b;
  Patch P;
  bool zero = false;

  static PatchTriple make(Point a, Patch P, Point b);
  static PatchTriple zero_triple();
  PatchTriple inverse() const { return zero ? *this : make(b, P, a); }
  bool idempotent() const { return !zero && a == b; }
  Point sigma() const { return a - b; }
  std::string str() const;
  friend bool operator==(const PatchTriple& x, const PatchTriple& y) {
    return x.zero == y.zero && x.a == y.a && x.b == y.b && x.P == y.P;
  }
  friend bool operator<(const PatchTriple& x, const PatchTriple& y) {
    return std::tie(x.zero, x.P, x.a, x.b) < std::tie(y.zero, y.P, y.a, y.b);
  }
};

// Some translate of the patch lies in D.
bool embeds(const Patch& p, const PointSet& D);

// [a,P,b][c,Q,d] = [a+x, (P+x) u (Q+y), d+y] with b+x = c+y, when the union
// has a translate inside D; zero otherwise.
PatchTriple triple_mul(const PatchTriple& s, const PatchTriple& t, const PointSet& D);

struct TilingConfig {
  std::size_t max_points = 20;  // patch enumeration cap
  std::size_t table_points = 6;  // exhaustive multiplication table up to this |D|
  std::optional<Adjacency> adjacency;
};

// Non-empty subsets of D up to translation, canonical representatives, in
// order of size then lexicographic.
std::vector<Patch> patch_classes(const PointSet& D, const TilingConfig& cfg = {});

// Gamma(D) as a finite inverse semigroup with sigma [a,P,b] -> a - b.
struct GammaSemigroup {
  std::vector<PatchTriple> triples;  // index 0 is zero
  InverseSemigroup S;
};
GammaSemigroup gamma_semigroup(const PointSet& D, const TilingConfig& cfg = {});

KTheoryExpression gamma_ktheory(const PointSet& D, const TilingConfig& cfg = {});

// classes, representatives, checks and the K-theory expression.
nlohmann::json tiling_report(const PointSet& D, const TilingConfig& cfg = {});

}  // namespace semik
