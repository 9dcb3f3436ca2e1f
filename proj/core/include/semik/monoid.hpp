#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/group.hpp"
#include "semik/words.hpp"

namespace semik {

// Ball-level access to a monoid P: canonical words and the relation x in pP.
class MonoidOracle {
 public:
  virtual ~MonoidOracle() = default;
  virtual const Alphabet& alphabet() const = 0;
  // One canonical word per element of P reachable by words of length <= radius,
  // ordered by length then shortlex.
  virtual std::vector<Word> ball_words(int radius) const = 0;
  virtual bool divides(const Word& p, const Word& x) const = 0;  // x in pP
  virtual bool same(const Word& x, const Word& y) const = 0;
};

// A constructible right ideal in canonical form. Principal ideals are rP for
// a group element r in P; numerical ideals (subsets of a numerical semigroup)
// are {x : x >= cut or bits[x]} with cut minimal; opaque ideals are only known
// through zigzag traces.
struct Ideal {
  enum class Kind { Empty, Principal, Numerical, Opaque };
  Kind kind = Kind::Empty;
  Elem gen;
  long long cut = 0;
  std::vector<bool> bits;

  static Ideal empty() { return {}; }
  static Ideal principal(Elem r) { return {Kind::Principal, std::move(r), 0, {}}; }
  static Ideal opaque() { return {Kind::Opaque, {}, 0, {}}; }

  bool is_empty() const { return kind == Kind::Empty; }
  bool exact() const { return kind != Kind::Opaque; }
  std::vector<long long> key() const;
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.key() == b.key() && a.exact() && b.exact(); }
};

// A monoid P embedded in a group G with decidable membership in P.
class MonoidModel : public MonoidOracle {
 public:
  MonoidModel(GroupPtr group, std::vector<Elem> letters, Alphabet alphabet);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const Alphabet& alphabet() const override { return alphabet_; }
  const std::vector<Elem>& letters() const { return letters_; }
  virtual std::string name() const = 0;

  Elem eval(const Word& w) const;
  Elem eval(const GroupWord& w) const;

  // A positive word representing g when g lies in P.
  virtual std::optional<Word> positive(const Elem& g) const = 0;
  bool in_P(const Elem& g) const { return positive(g).has_value(); }

  // True when preimage/image below produce canonical, decidable ideals.
  virtual bool exact_ideals() const { return true; }
  virtual Ideal whole() const { return Ideal::principal(group_->identity()); }
  virtual Ideal preimage(const Elem& p, const Ideal& D) const;  // {x in P : px in D}
  virtual Ideal image(const Elem& p, const Ideal& D) const;     // pD
  // Generator of pP n qP, or nullopt if empty. Only for right LCM models.
  virtual std::optional<Elem> lcm(const Elem& p, const Elem& q) const;

  bool contains(const Ideal& D, const Elem& x) const;
  virtual std::string str(const Ideal& D) const;
  std::string str(const Elem& x) const { return group_->str(x); }

  // Elements of P given by words of length <= radius, as (element, canonical word).
  std::vector<std::pair<Elem, Word>> ball(int radius) const;

  std::vector<Word> ball_words(int radius) const override;
  bool divides(const Word& p, const Word& x) const override;
  bool same(const Word& x, const Word& y) const override { return eval(x) == eval(y); }

 protected:
  GroupPtr group_;
  std::vector<Elem> letters_;
  Alphabet alphabet_;
};

using ModelPtr = std::shared_ptr<const MonoidModel>;

// Free monoid on the alphabet inside the free group.
class FreeMonoidModel final : public MonoidModel {
 public:
  explicit FreeMonoidModel(Alphabet alphabet);
  std::string name() const override { return "free monoid " + std::to_string(alphabet_.size()); }
  std::optional<Word> positive(const Elem& g) const override;
  std::optional<Elem> lcm(const Elem& p, const Elem& q) const override;
};

// N^n inside Z^n.
class FreeAbelianMonoidModel final : public MonoidModel {
 public:
  explicit FreeAbelianMonoidModel(Alphabet alphabet);
  std::string name() const override { return "N^" + std::to_string(alphabet_.size()); }
  std::optional<Word> positive(const Elem& g) const override;
  std::optional<Elem> lcm(const Elem& p, const Elem& q) const override;
};

// BS(k,l)^+ inside BS(k,l). Ideal arithmetic is exact only for k, l > 0.
class BSMonoidModel final : public MonoidModel {
 public:
  BSMonoidModel(long long k, long long l);
  std::string name() const override;
  std::optional<Word> positive(const Elem& g) const override;
  bool exact_ideals() const override { return k_ > 0 && l_ > 0; }
  Ideal preimage(const Elem& p, const Ideal& D) const override;
  Ideal image(const Elem& p, const Ideal& D) const override;
  std::optional<Elem> lcm(const Elem& p, const Elem& q) const override;
  const BSGroup& bs() const { return *bs_; }

 private:
  std::shared_ptr<const BSGroup> bs_;
  long long k_, l_;
};

// Numerical semigroup <g_1, ..., g_r> inside Z (gcd 1).
class NumericalModel final : public MonoidModel {
 public:
  explicit NumericalModel(std::vector<long long> gens, Alphabet alphabet = {});
  std::string name() const override;
  std::optional<Word> positive(const Elem& g) const override;
  Ideal whole() const override;
  Ideal preimage(const Elem& p, const Ideal& D) const override;
  Ideal image(const Elem& p, const Ideal& D) const override;
  std::optional<Elem> lcm(const Elem& p, const Elem& q) const override;
  long long conductor() const { return conductor_; }
  bool member(long long n) const;
  // Members listed up to the first run reaching the conductor: {2,4..}
  std::string str(const Ideal& D) const override;
  using MonoidModel::str;
  const std::vector<long long>& gens() const { return gens_; }

 private:
  Ideal normalize(long long cut, std::vector<bool> bits) const;

  std::vector<long long> gens_;
  long long conductor_ = 0;
  std::vector<int> last_;  // last_[n] = generator index ending a representation of n, -1 if none
};

// Exact model for presentations whose relations preserve length: elements of
// length n are equivalence classes of words of length n under relation moves.
class HomogeneousModel final : public MonoidOracle {
 public:
  HomogeneousModel(Alphabet alphabet, std::vector<std::pair<Word, Word>> relations, std::size_t max_class = 200000);

  const Alphabet& alphabet() const override { return alphabet_; }
  const std::vector<Word>& word_class(const Word& w) const;
  const Word& canon(const Word& w) const { return word_class(w).front(); }
  std::vector<Word> ball_words(int radius) const override;
  bool divides(const Word& p, const Word& x) const override;
  bool same(const Word& x, const Word& y) const override { return canon(x) == canon(y); }

 private:
  Alphabet alphabet_;
  std::vector<std::pair<Word, Word>> rel_;
  std::size_t max_class_;
  mutable std::map<Word, std::shared_ptr<const std::vector<Word>>> cache_;
};

}  // namespace semik
