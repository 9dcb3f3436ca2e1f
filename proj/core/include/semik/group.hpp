#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semik/words.hpp"

namespace semik {

// A group element in the normal form of its group; equal elements have
// equal vectors, so Elem can be hashed, sorted and compared directly.
using Elem = std::vector<long long>;

class Group {
 public:
  virtual ~Group() = default;

  virtual std::string name() const = 0;
  virtual Elem identity() const = 0;
  virtual Elem mul(const Elem& x, const Elem& y) const = 0;
  virtual Elem inv(const Elem& x) const = 0;
  virtual std::string str(const Elem& x) const = 0;
  // Generators in alphabet order; letter i of a word maps to generators()[i].
  virtual std::vector<Elem> generators() const = 0;
  virtual const Alphabet& alphabet() const = 0;
  // Geodesic-ish length used only for deterministic ordering.
  virtual long long length(const Elem& x) const = 0;

  virtual bool is_finite() const { return false; }
  virtual std::vector<Elem> elements() const;  // finite groups only

  Elem eval(const GroupWord& w) const;
  Elem eval(const Word& w) const;
  Elem pow(const Elem& x, long long n) const;
  bool is_identity(const Elem& x) const { return x == identity(); }
  // Order of x, or nullopt if it exceeds the bound (infinite for our groups).
  std::optional<long long> order_of(const Elem& x, long long bound = 64) const;
  // Length-then-lexicographic order on normal forms.
  bool less(const Elem& x, const Elem& y) const;
  // Elements reachable by words of length <= radius in generators and inverses.
  std::vector<Elem> ball(int radius) const;
};

using GroupPtr = std::shared_ptr<const Group>;

// Z^rank x Z/t1 x ... x Z/tk with coordinates reduced mod t_i.
class AbelianGroup final : public Group {
 public:
  AbelianGroup(int rank, std::vector<long long> torsion, Alphabet alphabet = {});

  std::string name() const override;
  Elem identity() const override;
  Elem mul(const Elem& x, const Elem& y) const override;
  Elem inv(const Elem& x) const override;
  std::string str(const Elem& x) const override;
  std::vector<Elem> generators() const override;
  const Alphabet& alphabet() const override { return alphabet_; }
  long long length(const Elem& x) const override;
  bool is_finite() const override { return rank_ == 0; }
  std::vector<Elem> elements() const override;

  int rank() const { return rank_; }
  const std::vector<long long>& torsion() const { return torsion_; }
  int dim() const { return rank_ + static_cast<int>(torsion_.size()); }
  Elem vec(std::vector<long long> coords) const;

 private:
  int rank_;
  std::vector<long long> torsion_;
  Alphabet alphabet_;
};

// Free group on the alphabet; elements are reduced words with letters +-(i+1).
class FreeGroup final : public Group {
 public:
  explicit FreeGroup(Alphabet alphabet);

  std::string name() const override;
  Elem identity() const override { return {}; }
  Elem mul(const Elem& x, const Elem& y) const override;
  Elem inv(const Elem& x) const override;
  std::string str(const Elem& x) const override;
  std::vector<Elem> generators() const override;
  const Alphabet& alphabet() const override { return alphabet_; }
  long long length(const Elem& x) const override { return static_cast<long long>(x.size()); }

  static GroupWord to_word(const Elem& x);

 private:
  Alphabet alphabet_;
};

// BS(k,l) = <a,b | a b^k a^-1 = b^l>. Elements are Britton normal forms
// b^n a^e1 b^r1 ... a^em b^rm stored as [n, e1, r1, ..., em, rm] with
// 0 <= r_i < |k| after a, 0 <= r_i < |l| after a^-1, and no pinch.
class BSGroup final : public Group {
 public:
  BSGroup(long long k, long long l);

  std::string name() const override;
  Elem identity() const override { return {0}; }
  Elem mul(const Elem& x, const Elem& y) const override;
  Elem inv(const Elem& x) const override;
  std::string str(const Elem& x) const override;
  std::vector<Elem> generators() const override;
  const Alphabet& alphabet() const override { return alphabet_; }
  long long length(const Elem& x) const override;

  long long k() const { return k_; }
  long long l() const { return l_; }
  GroupWord to_word(const Elem& x) const;
  static int a_count(const Elem& x) { return static_cast<int>((x.size() - 1) / 2); }
  // Positive word equal to x when x lies in the submonoid generated by a, b.
  std::optional<Word> positive_word(const Elem& x) const;

 private:
  Elem normalize(long long n0, std::vector<std::pair<int, long long>> syl) const;

  long long k_, l_;
  Alphabet alphabet_;
};

// Permutation group on {0..degree-1}, closed from generators (order <= 5040).
class PermGroup final : public Group {
 public:
  PermGroup(int degree, std::vector<Elem> gens, Alphabet alphabet = {});

  std::string name() const override;
  Elem identity() const override;
  Elem mul(const Elem& x, const Elem& y) const override;  // (xy)(i) = x(y(i))
  Elem inv(const Elem& x) const override;
  std::string str(const Elem& x) const override;
  std::vector<Elem> generators() const override { return gens_; }
  const Alphabet& alphabet() const override { return alphabet_; }
  long long length(const Elem& x) const override;
  bool is_finite() const override { return true; }
  std::vector<Elem> elements() const override { return elements_; }

 private:
  int degree_;
  std::vector<Elem> gens_;
  Alphabet alphabet_;
  std::vector<Elem> elements_;
  std::vector<long long> lengths_;
};

}  // namespace semik
