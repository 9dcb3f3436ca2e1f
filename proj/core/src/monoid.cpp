#include "semik/monoid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "semik/errors.hpp"

namespace semik {

std::vector<long long> Ideal::key() const {
  switch (kind) {
    case Kind::Empty: return {0};
    case Kind::Principal: {
      std::vector<long long> k{1};
      k.insert(k.end(), gen.begin(), gen.end());
      return k;
    }
    case Kind::Numerical: {
      std::vector<long long> k{2, cut};
      for (bool b : bits) k.push_back(b ? 1 : 0);
      return k;
    }
    case Kind::Opaque: return {3};
  }
  return {};
}

// ---- MonoidModel ----

MonoidModel::MonoidModel(GroupPtr group, std::vector<Elem> letters, Alphabet alphabet)
    : group_(std::move(group)), letters_(std::move(letters)), alphabet_(std::move(alphabet)) {
  if (static_cast<int>(letters_.size()) != alphabet_.size())
    throw Error(ErrorKind::InvalidParams, "monoid letters do not match alphabet");
}

Elem MonoidModel::eval(const Word& w) const {
  Elem r = group_->identity();
  for (int x : w) r = group_->mul(r, letters_.at(static_cast<std::size_t>(x)));
  return r;
}

Elem MonoidModel::eval(const GroupWord& w) const {
  Elem r = group_->identity();
  for (const auto& l : w) {
    const Elem& g = letters_.at(static_cast<std::size_t>(l.gen));
    r = group_->mul(r, l.exp > 0 ? g : group_->inv(g));
  }
  return r;
}

Ideal MonoidModel::preimage(const Elem& p, const Ideal& D) const {
  switch (D.kind) {
    case Ideal::Kind::Empty: return D;
    case Ideal::Kind::Opaque: return D;
    case Ideal::Kind::Principal: {
      auto m = lcm(p, D.gen);
      if (!m) return Ideal::empty();
      return Ideal::principal(group_->mul(group_->inv(p), *m));
    }
    case Ideal::Kind::Numerical: break;
  }
  throw Error(ErrorKind::InvalidParams, "ideal kind not supported by " + name());
}

Ideal MonoidModel::image(const Elem& p, const Ideal& D) const {
  switch (D.kind) {
    case Ideal::Kind::Empty: return D;
    case Ideal::Kind::Opaque: return D;
    case Ideal::Kind::Principal: return Ideal::principal(group_->mul(p, D.gen));
    case Ideal::Kind::Numerical: break;
  }
  throw Error(ErrorKind::InvalidParams, "ideal kind not supported by " + name());
}

std::optional<Elem> MonoidModel::lcm(const Elem&, const Elem&) const {
  throw Error(ErrorKind::InvalidParams, name() + " has no exact lcm rule");
}

bool MonoidModel::contains(const Ideal& D, const Elem& x) const {
  switch (D.kind) {
    case Ideal::Kind::Empty: return false;
    case Ideal::Kind::Principal: return in_P(group_->mul(group_->inv(D.gen), x));
    case Ideal::Kind::Numerical: {
      if (!in_P(x)) return false;
      long long n = x[0];
      return n >= D.cut || D.bits[static_cast<std::size_t>(n)];
    }
    case Ideal::Kind::Opaque: break;
  }
  throw Error(ErrorKind::DomainViolation, "membership in an opaque ideal needs a zigzag trace");
}

std::string MonoidModel::str(const Ideal& D) const {
  switch (D.kind) {
    case Ideal::Kind::Empty: return "0";
    case Ideal::Kind::Principal: return group_->is_identity(D.gen) ? "P" : str(D.gen) + "P";
    case Ideal::Kind::Numerical: {
      std::string s = "{";
      for (std::size_t i = 0; i < D.bits.size(); ++i)
        if (D.bits[i]) s += std::to_string(i) + ",";
      return s + std::to_string(D.cut) + "..}";
    }
    case Ideal::Kind::Opaque: return "?";
  }
  return "?";
}

std::vector<std::pair<Elem, Word>> MonoidModel::ball(int radius) const {
  std::vector<std::pair<Elem, Word>> out{{group_->identity(), {}}};
  std::set<Elem> seen{group_->identity()};
  std::size_t begin = 0;
  for (int r = 0; r < radius; ++r) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t x = 0; x < letters_.size(); ++x) {
        Elem e = group_->mul(out[i].first, letters_[x]);
        if (!seen.insert(e).second) continue;
        Word w = out[i].second;
        w.push_back(static_cast<int>(x));
        out.emplace_back(std::move(e), std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

std::vector<Word> MonoidModel::ball_words(int radius) const {
  std::vector<Word> out;
  for (auto& [e, w] : ball(radius)) out.push_back(std::move(w));
  return out;
}

bool MonoidModel::divides(const Word& p, const Word& x) const {
  return in_P(group_->mul(group_->inv(eval(p)), eval(x)));
}

// ---- free monoid ----

namespace {

std::vector<Elem> free_letters(int n) {
  std::vector<Elem> l;
  for (int i = 0; i < n; ++i) l.push_back({i + 1});
  return l;
}

std::vector<Elem> unit_vectors(int n) {
  std::vector<Elem> l;
  for (int i = 0; i < n; ++i) {
    Elem e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    l.push_back(e);
  }
  return l;
}

}  // namespace

FreeMonoidModel::FreeMonoidModel(Alphabet alphabet)
    : MonoidModel(std::make_shared<FreeGroup>(alphabet), free_letters(alphabet.size()), alphabet) {}

std::optional<Word> FreeMonoidModel::positive(const Elem& g) const {
  Word w;
  for (long long l : g) {
    if (l < 0) return std::nullopt;
    w.push_back(static_cast<int>(l - 1));
  }
  return w;
}

std::optional<Elem> FreeMonoidModel::lcm(const Elem& p, const Elem& q) const {
  const Elem& s = p.size() <= q.size() ? p : q;
  const Elem& t = p.size() <= q.size() ? q : p;
  if (std::equal(s.begin(), s.end(), t.begin())) return t;
  return std::nullopt;
}

// ---- N^n ----

FreeAbelianMonoidModel::FreeAbelianMonoidModel(Alphabet alphabet)
    : MonoidModel(std::make_shared<AbelianGroup>(alphabet.size(), std::vector<long long>{}, alphabet),
                  unit_vectors(alphabet.size()), alphabet) {}

std::optional<Word> FreeAbelianMonoidModel::positive(const Elem& g) const {
  Word w;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < 0) return std::nullopt;
    w.insert(w.end(), static_cast<std::size_t>(g[i]), static_cast<int>(i));
  }
  return w;
}

std::optional<Elem> FreeAbelianMonoidModel::lcm(const Elem& p, const Elem& q) const {
  Elem r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = std::max(p[i], q[i]);
  return r;
}

// ---- BS ----

BSMonoidModel::BSMonoidModel(long long k, long long l)
    : MonoidModel(std::make_shared<BSGroup>(k, l), {{0, 1, 0}, {1}}, Alphabet::letters("ab")), k_(k), l_(l) {
  bs_ = std::static_pointer_cast<const BSGroup>(group_);
}

std::string BSMonoidModel::name() const { return "BS(" + std::to_string(k_) + "," + std::to_string(l_) + ")^+"; }

std::optional<Word> BSMonoidModel::positive(const Elem& g) const { return bs_->positive_word(g); }

Ideal BSMonoidModel::preimage(const Elem& p, const Ideal& D) const {
  if (!exact_ideals() && !D.is_empty()) return Ideal::opaque();
  return MonoidModel::preimage(p, D);
}

Ideal BSMonoidModel::image(const Elem& p, const Ideal& D) const {
  if (!exact_ideals() && !D.is_empty()) return Ideal::opaque();
  return MonoidModel::image(p, D);
}

std::optional<Elem> BSMonoidModel::lcm(const Elem& p, const Elem& q) const {
  if (!exact_ideals()) return MonoidModel::lcm(p, q);
  // Elements of P are b^n a b^r1 ... a b^rm with n >= 0 and 0 <= r_i < k.
  const BSGroup& G = *bs_;
  auto bpow = [](long long n) { return Elem{n}; };
  const Elem a{0, 1, 0};
  auto tail = [&](const Elem& x) { return G.mul(G.inv(a), G.mul(bpow(-x[0]), x)); };  // x = b^n a tail
  const int ap = BSGroup::a_count(p), aq = BSGroup::a_count(q);
  const long long np = p[0], nq = q[0];
  if (ap == 0 && aq == 0) return bpow(std::max(np, nq));
  if (ap == 0 || aq == 0) {
    const Elem& pure = ap == 0 ? p : q;  // b^n
    const Elem& other = ap == 0 ? q : p;
    long long n = pure[0], m = other[0];
    if (m >= n) return other;
    long long c = (n - m + l_ - 1) / l_;
    auto r = lcm(tail(other), bpow(c * k_));
    if (!r) return std::nullopt;
    return G.mul(bpow(m), G.mul(a, *r));
  }
  long long e = np > nq ? np - nq : nq - np;
  if (e % l_ != 0) return std::nullopt;
  Elem shift = bpow(e / l_ * k_);
  std::optional<Elem> r;
  if (np <= nq) {
    r = lcm(tail(p), G.mul(shift, tail(q)));
  } else {
    r = lcm(G.mul(shift, tail(p)), tail(q));
  }
  if (!r) return std::nullopt;
  return G.mul(bpow(std::min(np, nq)), G.mul(a, *r));
}

// ---- numerical ----

NumericalModel::NumericalModel(std::vector<long long> gens, Alphabet alphabet)
    : MonoidModel(std::make_shared<AbelianGroup>(1, std::vector<long long>{}), {}, {}), gens_(std::move(gens)) {
  if (gens_.empty()) throw Error(ErrorKind::InvalidParams, "numerical semigroup needs generators");
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  long long g = 0;
  for (long long x : gens_) {
    if (x < 1 || x > 1000) throw Error(ErrorKind::InvalidParams, "numerical generators must lie in 1..1000");
    g = std::gcd(g, x);
  }
  if (g != 1) throw Error(ErrorKind::InvalidParams, "numerical generators must have gcd 1");
  if (alphabet.size() == 0) {
    std::string s;
    for (std::size_t i = 0; i < gens_.size(); ++i) s += static_cast<char>('a' + i);
    alphabet = Alphabet::letters(s);
  }
  if (alphabet.size() != static_cast<int>(gens_.size()))
    throw Error(ErrorKind::InvalidParams, "alphabet size does not match generator count");
  alphabet_ = std::move(alphabet);
  for (long long x : gens_) letters_.push_back({x});
  const long long bound = gens_.front() * gens_.back() + gens_.back() + 1;
  last_.assign(static_cast<std::size_t>(bound), -1);
  std::vector<bool> in(static_cast<std::size_t>(bound), false);
  in[0] = true;
  for (long long n = 1; n < bound; ++n)
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (n >= gens_[i] && in[static_cast<std::size_t>(n - gens_[i])]) {
        in[static_cast<std::size_t>(n)] = true;
        last_[static_cast<std::size_t>(n)] = static_cast<int>(i);
        break;
      }
  conductor_ = 0;
  for (long long n = bound - 1; n >= 0; --n)
    if (!in[static_cast<std::size_t>(n)]) {
      conductor_ = n + 1;
      break;
    }
}

std::string NumericalModel::name() const {
  std::string s = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + std::to_string(gens_[i]);
  return s + ">";
}

bool NumericalModel::member(long long n) const {
  if (n < 0) return false;
  if (n >= conductor_) return true;
  return n == 0 || last_[static_cast<std::size_t>(n)] >= 0;
}

std::optional<Word> NumericalModel::positive(const Elem& g) const {
  long long n = g[0];
  if (!member(n)) return std::nullopt;
  Word w;
  const auto size = static_cast<long long>(last_.size());
  if (n >= size) {
    long long t = (n - size) / gens_.front() + 1;
    w.insert(w.end(), static_cast<std::size_t>(t), 0);
    n -= t * gens_.front();
  }
  while (n > 0) {
    int i = last_[static_cast<std::size_t>(n)];
    w.push_back(i);
    n -= gens_[static_cast<std::size_t>(i)];
  }
  std::sort(w.begin(), w.end());
  return w;
}

Ideal NumericalModel::normalize(long long cut, std::vector<bool> bits) const {
  bits.resize(static_cast<std::size_t>(cut), false);
  for (long long i = 0; i < cut; ++i)
    if (!member(i)) bits[static_cast<std::size_t>(i)] = false;
  while (cut > 0 && (bits[static_cast<std::size_t>(cut - 1)] || !member(cut - 1))) {
    --cut;
    bits.pop_back();
  }
  Ideal D;
  D.kind = Ideal::Kind::Numerical;
  D.cut = cut;
  D.bits = std::move(bits);
  return D;
}

std::string NumericalModel::str(const Ideal& D) const {
  if (D.kind != Ideal::Kind::Numerical) return MonoidModel::str(D);
  std::string s = "{";
  for (std::size_t i = 0; i < D.bits.size(); ++i)
    if (D.bits[i]) s += std::to_string(i) + ",";
  long long tail = D.cut;
  for (long long y = D.cut; y < conductor_; ++y)
    if (!member(y)) tail = y + 1;
  for (long long y = D.cut; y < tail; ++y)
    if (member(y)) s += std::to_string(y) + ",";
  return s + std::to_string(tail) + "..}";
}

Ideal NumericalModel::whole() const { return normalize(0, {}); }

Ideal NumericalModel::preimage(const Elem& p, const Ideal& D) const {
  if (D.kind != Ideal::Kind::Numerical) return MonoidModel::preimage(p, D);
  const long long n = p[0];
  const long long cut = std::max(D.cut - n, 0LL);
  std::vector<bool> bits(static_cast<std::size_t>(cut));
  for (long long x = 0; x < cut; ++x) bits[static_cast<std::size_t>(x)] = member(x) && D.bits[static_cast<std::size_t>(x + n)];
  return normalize(cut, std::move(bits));
}

Ideal NumericalModel::image(const Elem& p, const Ideal& D) const {
  if (D.kind != Ideal::Kind::Numerical) return MonoidModel::image(p, D);
  const long long n = p[0];
  const long long cut = n + std::max(D.cut, conductor_);
  std::vector<bool> bits(static_cast<std::size_t>(cut));
  for (long long y = n; y < cut; ++y) {
    long long x = y - n;
    bits[static_cast<std::size_t>(y)] = member(x) && (x >= D.cut || D.bits[static_cast<std::size_t>(x)]);
  }
  return normalize(cut, std::move(bits));
}

std::optional<Elem> NumericalModel::lcm(const Elem& p, const Elem& q) const {
  long long m = std::max(p[0], q[0]);
  for (long long c = m;; ++c) {
    if (member(c - p[0]) && member(c - q[0])) {
      bool principal = true;
      for (long long y = c; y < c + conductor_ + gens_.back() && principal; ++y)
        if (member(y - p[0]) && member(y - q[0]) && !member(y - c)) principal = false;
      if (!principal) throw Error(ErrorKind::InvalidParams, name() + " is not right LCM");
      return Elem{c};
    }
  }
}

// ---- homogeneous ----

HomogeneousModel::HomogeneousModel(Alphabet alphabet, std::vector<std::pair<Word, Word>> relations,
                                   std::size_t max_class)
    : alphabet_(std::move(alphabet)), rel_(std::move(relations)), max_class_(max_class) {
  for (const auto& [u, v] : rel_)
    if (u.size() != v.size()) throw Error(ErrorKind::InvalidParams, "relations must preserve length");
}

const std::vector<Word>& HomogeneousModel::word_class(const Word& w) const {
  if (auto it = cache_.find(w); it != cache_.end()) return *it->second;
  std::set<Word> seen{w};
  std::deque<Word> q{w};
  while (!q.empty()) {
    Word x = q.front();
    q.pop_front();
    for (const auto& [u, v] : rel_) {
      for (int dir = 0; dir < 2; ++dir) {
        const Word& from = dir ? v : u;
        const Word& to = dir ? u : v;
        if (from.size() > x.size()) continue;
        for (std::size_t i = 0; i + from.size() <= x.size(); ++i) {
          if (!std::equal(from.begin(), from.end(), x.begin() + static_cast<std::ptrdiff_t>(i))) continue;
          Word y = x;
          std::copy(to.begin(), to.end(), y.begin() + static_cast<std::ptrdiff_t>(i));
          if (seen.insert(y).second) {
            if (seen.size() > max_class_)
              throw Error(ErrorKind::BudgetExceeded, "word class larger than " + std::to_string(max_class_));
            q.push_back(std::move(y));
          }
        }
      }
    }
  }
  auto cls = std::make_shared<const std::vector<Word>>(seen.begin(), seen.end());
  for (const auto& x : *cls) cache_[x] = cls;
  return *cls;
}

std::vector<Word> HomogeneousModel::ball_words(int radius) const {
  std::vector<Word> out;
  const auto n = static_cast<std::size_t>(alphabet_.size());
  for (int len = 0; len <= radius; ++len) {
    Word w(static_cast<std::size_t>(len), 0);
    std::set<Word> reps;
    while (true) {
      reps.insert(canon(w));
      std::size_t i = w.size();
      while (i > 0 && static_cast<std::size_t>(w[i - 1]) + 1 == n) w[--i] = 0;
      if (i == 0 || n == 0) break;
      ++w[i - 1];
    }
    out.insert(out.end(), reps.begin(), reps.end());
  }
  return out;
}

bool HomogeneousModel::divides(const Word& p, const Word& x) const {
  if (p.size() > x.size()) return false;
  const Word& cp = canon(p);
  for (const auto& y : word_class(x))
    if (canon(Word(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(p.size()))) == cp) return true;
  return false;
}

}  // namespace semik
