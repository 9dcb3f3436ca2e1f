#include "semik/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "semik/errors.hpp"

namespace semik {

namespace {

Alphabet default_letters(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += static_cast<char>('a' + i);
  return Alphabet::letters(s);
}

long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::BudgetExceeded, "integer overflow in normal form");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::BudgetExceeded, "integer overflow in normal form");
  return r;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

}  // namespace

// ---- Group ----

std::vector<Elem> Group::elements() const {
  throw Error(ErrorKind::InvalidParams, "group " + name() + " is infinite");
}

Elem Group::eval(const GroupWord& w) const {
  auto gens = generators();
  Elem r = identity();
  for (const auto& l : w) {
    const Elem& g = gens.at(static_cast<std::size_t>(l.gen));
    r = mul(r, l.exp > 0 ? g : inv(g));
  }
  return r;
}

Elem Group::eval(const Word& w) const { return eval(to_group_word(w)); }

Elem Group::pow(const Elem& x, long long n) const {
  Elem base = n < 0 ? inv(x) : x;
  long long e = n < 0 ? -n : n;
  Elem r = identity();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::optional<long long> Group::order_of(const Elem& x, long long bound) const {
  Elem y = x;
  for (long long n = 1; n <= bound; ++n) {
    if (is_identity(y)) return n;
    y = mul(y, x);
  }
  return std::nullopt;
}

bool Group::less(const Elem& x, const Elem& y) const {
  long long lx = length(x), ly = length(y);
  if (lx != ly) return lx < ly;
  return x < y;
}

std::vector<Elem> Group::ball(int radius) const {
  std::vector<Elem> steps;
  for (const auto& g : generators()) {
    steps.push_back(g);
    steps.push_back(inv(g));
  }
  std::set<Elem> seen{identity()};
  std::vector<Elem> frontier{identity()};
  for (int r = 0; r < radius; ++r) {
    std::vector<Elem> next;
    for (const auto& x : frontier)
      for (const auto& s : steps) {
        Elem y = mul(x, s);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<Elem> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [this](const Elem& a, const Elem& b) { return less(a, b); });
  return out;
}

// ---- AbelianGroup ----

AbelianGroup::AbelianGroup(int rank, std::vector<long long> torsion, Alphabet alphabet)
    : rank_(rank), torsion_(std::move(torsion)), alphabet_(std::move(alphabet)) {
  if (rank_ < 0) throw Error(ErrorKind::InvalidParams, "negative rank");
  for (long long t : torsion_)
    if (t < 2) throw Error(ErrorKind::InvalidParams, "torsion moduli must be >= 2");
  if (alphabet_.size() == 0) alphabet_ = default_letters(dim());
  if (alphabet_.size() != dim()) throw Error(ErrorKind::InvalidParams, "alphabet size does not match group dimension");
}

std::string AbelianGroup::name() const {
  std::string s;
  if (rank_ > 0) s = rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
  for (long long t : torsion_) {
    if (!s.empty()) s += " x ";
    s += "Z/" + std::to_string(t);
  }
  return s.empty() ? "1" : s;
}

Elem AbelianGroup::identity() const { return Elem(static_cast<std::size_t>(dim()), 0); }

Elem AbelianGroup::vec(std::vector<long long> c) const {
  if (static_cast<int>(c.size()) != dim()) throw Error(ErrorKind::InvalidParams, "wrong coordinate count");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto j = static_cast<std::size_t>(rank_) + i;
    c[j] = floor_mod(c[j], torsion_[i]);
  }
  return c;
}

Elem AbelianGroup::mul(const Elem& x, const Elem& y) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = checked_add(x[i], y[i]);
  return vec(std::move(r));
}

Elem AbelianGroup::inv(const Elem& x) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return vec(std::move(r));
}

std::string AbelianGroup::str(const Elem& x) const {
  if (x.size() == 1) return std::to_string(x[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

std::vector<Elem> AbelianGroup::generators() const {
  std::vector<Elem> g;
  for (int i = 0; i < dim(); ++i) {
    Elem e = identity();
    e[static_cast<std::size_t>(i)] = 1;
    g.push_back(vec(e));
  }
  return g;
}

long long AbelianGroup::length(const Elem& x) const {
  long long s = 0;
  for (int i = 0; i < dim(); ++i) {
    long long v = x[static_cast<std::size_t>(i)];
    if (i < rank_) {
      s += v < 0 ? -v : v;
    } else {
      long long t = torsion_[static_cast<std::size_t>(i - rank_)];
      s += std::min(v, t - v);
    }
  }
  return s;
}

std::vector<Elem> AbelianGroup::elements() const {
  if (rank_ > 0) return Group::elements();
  std::vector<Elem> out{identity()};
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    std::vector<Elem> next;
    for (const auto& e : out)
      for (long long v = 0; v < torsion_[i]; ++v) {
        Elem f = e;
        f[i] = v;
        next.push_back(f);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [this](const Elem& a, const Elem& b) { return less(a, b); });
  return out;
}

// ---- FreeGroup ----

FreeGroup::FreeGroup(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

std::string FreeGroup::name() const { return "F" + std::to_string(alphabet_.size()); }

Elem FreeGroup::mul(const Elem& x, const Elem& y) const {
  Elem r = x;
  for (long long l : y) {
    if (!r.empty() && r.back() == -l) {
      r.pop_back();
    } else {
      r.push_back(l);
    }
  }
  return r;
}

Elem FreeGroup::inv(const Elem& x) const {
  Elem r(x.rbegin(), x.rend());
  for (auto& l : r) l = -l;
  return r;
}

GroupWord FreeGroup::to_word(const Elem& x) {
  GroupWord w;
  for (long long l : x) w.push_back({static_cast<int>((l < 0 ? -l : l) - 1), l < 0 ? -1 : 1});
  return w;
}

std::string FreeGroup::str(const Elem& x) const { return to_string(to_word(x), alphabet_); }

std::vector<Elem> FreeGroup::generators() const {
  std::vector<Elem> g;
  for (int i = 0; i < alphabet_.size(); ++i) g.push_back({i + 1});
  return g;
}

// ---- BSGroup ----

BSGroup::BSGroup(long long k, long long l) : k_(k), l_(l), alphabet_(Alphabet::letters("ab")) {
  if (k == 0 || l == 0) throw Error(ErrorKind::InvalidParams, "BS(k,l) needs k and l nonzero");
}

std::string BSGroup::name() const { return "BS(" + std::to_string(k_) + "," + std::to_string(l_) + ")"; }

Elem BSGroup::normalize(long long n0, std::vector<std::pair<int, long long>> syl) const {
  const long long ak = k_ < 0 ? -k_ : k_;
  const long long al = l_ < 0 ? -l_ : l_;
  while (true) {
    long long carry = 0;
    for (std::size_t j = syl.size(); j-- > 0;) {
      long long raw = checked_add(syl[j].second, carry);
      if (syl[j].first > 0) {
        long long r = floor_mod(raw, ak);
        carry = checked_mul((raw - r) / k_, l_);
        syl[j].second = r;
      } else {
        long long r = floor_mod(raw, al);
        carry = checked_mul((raw - r) / l_, k_);
        syl[j].second = r;
      }
    }
    n0 = checked_add(n0, carry);
    std::size_t pinch = syl.size();
    for (std::size_t j = 0; j + 1 < syl.size(); ++j) {
      if (syl[j].second == 0 && syl[j].first != syl[j + 1].first) {
        pinch = j;
        break;
      }
    }
    if (pinch == syl.size()) break;
    long long tail = syl[pinch + 1].second;
    if (pinch == 0) {
      n0 = checked_add(n0, tail);
    } else {
      syl[pinch - 1].second = checked_add(syl[pinch - 1].second, tail);
    }
    syl.erase(syl.begin() + static_cast<std::ptrdiff_t>(pinch), syl.begin() + static_cast<std::ptrdiff_t>(pinch) + 2);
  }
  Elem out{n0};
  for (const auto& [e, r] : syl) {
    out.push_back(e);
    out.push_back(r);
  }
  return out;
}

Elem BSGroup::mul(const Elem& x, const Elem& y) const {
  std::vector<std::pair<int, long long>> syl;
  for (std::size_t i = 1; i + 1 < x.size(); i += 2) syl.emplace_back(static_cast<int>(x[i]), x[i + 1]);
  long long n0 = x[0];
  if (syl.empty()) {
    n0 = checked_add(n0, y[0]);
  } else {
    syl.back().second = checked_add(syl.back().second, y[0]);
  }
  for (std::size_t i = 1; i + 1 < y.size(); i += 2) syl.emplace_back(static_cast<int>(y[i]), y[i + 1]);
  return normalize(n0, std::move(syl));
}

Elem BSGroup::inv(const Elem& x) const {
  // (b^n a^e1 b^r1 ... a^em b^rm)^-1 = b^-rm a^-em ... b^-r1 a^-e1 b^-n
  std::size_t m = (x.size() - 1) / 2;
  if (m == 0) return {-x[0]};
  long long n0 = -x[2 * m];
  std::vector<std::pair<int, long long>> syl;
  for (std::size_t j = m; j >= 1; --j) {
    long long next = j >= 2 ? -x[2 * (j - 1)] : -x[0];
    syl.emplace_back(-static_cast<int>(x[2 * j - 1]), next);
  }
  return normalize(n0, std::move(syl));
}

GroupWord BSGroup::to_word(const Elem& x) const {
  GroupWord w;
  auto bpow = [&w](long long n) {
    for (long long i = 0; i < (n < 0 ? -n : n); ++i) w.push_back({1, n < 0 ? -1 : 1});
  };
  bpow(x[0]);
  for (std::size_t i = 1; i + 1 < x.size(); i += 2) {
    w.push_back({0, static_cast<int>(x[i])});
    bpow(x[i + 1]);
  }
  return w;
}

std::string BSGroup::str(const Elem& x) const { return to_string(to_word(x), alphabet_); }

std::vector<Elem> BSGroup::generators() const { return {{0, 1, 0}, {1}}; }

long long BSGroup::length(const Elem& x) const {
  long long s = x[0] < 0 ? -x[0] : x[0];
  for (std::size_t i = 1; i + 1 < x.size(); i += 2) s += 1 + x[i + 1];
  return s;
}

std::optional<Word> BSGroup::positive_word(const Elem& x) const {
  // x = b^n a b^r1 ... a b^rm. A positive word b^m0 a b^m1 ... a b^mm has this
  // normal form iff there are integers q_1..q_m with
  //   m_m = r_m + q_m k, m_i = r_i + q_i k - q_{i+1} l, m_0 = n - q_1 l,
  // all non-negative. Feasible sets S_i for q_i are half-lines or Z.
  const std::size_t m = (x.size() - 1) / 2;
  for (std::size_t i = 1; i < x.size(); i += 2)
    if (x[i] < 0) return std::nullopt;
  if (m == 0) {
    if (x[0] < 0) return std::nullopt;
    return Word(static_cast<std::size_t>(x[0]), 1);
  }
  auto r = [&x](std::size_t i) { return x[2 * i]; };  // r(i), 1-based
  struct Interval {
    std::optional<long long> lo, hi;
  };
  // min of q*l over an interval; nullopt = -infinity
  auto min_ql = [this](const Interval& s) -> std::optional<long long> {
    if (l_ > 0) {
      if (!s.lo) return std::nullopt;
      return checked_mul(*s.lo, l_);
    }
    if (!s.hi) return std::nullopt;
    return checked_mul(*s.hi, l_);
  };
  // {q : q k >= t}
  auto half = [this](long long t) {
    Interval s;
    if (k_ > 0) s.lo = ceil_div(t, k_);
    else s.hi = floor_div(t, k_);
    return s;
  };
  std::vector<Interval> S(m + 1);
  S[m] = half(-r(m));
  for (std::size_t i = m - 1; i >= 1; --i) {
    auto t = min_ql(S[i + 1]);
    S[i] = t ? half(checked_add(*t, -r(i))) : Interval{};
  }
  auto t1 = min_ql(S[1]);
  if (t1 && *t1 > x[0]) return std::nullopt;
  // choose q' in S with q' l <= bound, taking the largest such q' l
  auto pick = [this](const Interval& s, long long bound) -> long long {
    long long q;
    if (l_ > 0) {
      q = floor_div(bound, l_);
      if (s.hi) q = std::min(q, *s.hi);
    } else {
      q = ceil_div(bound, l_);
      if (s.lo) q = std::max(q, *s.lo);
    }
    return q;
  };
  std::vector<long long> q(m + 2, 0);
  q[1] = pick(S[1], x[0]);
  for (std::size_t i = 1; i < m; ++i) q[i + 1] = pick(S[i + 1], checked_add(r(i), checked_mul(q[i], k_)));
  std::vector<long long> mm(m + 1);
  mm[0] = x[0] - checked_mul(q[1], l_);
  for (std::size_t i = 1; i < m; ++i) mm[i] = r(i) + checked_mul(q[i], k_) - checked_mul(q[i + 1], l_);
  mm[m] = r(m) + checked_mul(q[m], k_);
  Word w;
  for (std::size_t i = 0; i <= m; ++i) {
    if (mm[i] < 0) throw Error(ErrorKind::DomainViolation, "positive-word reconstruction failed for " + str(x));
    if (mm[i] > 1000000) throw Error(ErrorKind::BudgetExceeded, "positive word too long for " + str(x));
    if (i > 0) w.push_back(0);
    w.insert(w.end(), static_cast<std::size_t>(mm[i]), 1);
  }
  if (eval(w) != x) throw Error(ErrorKind::DomainViolation, "positive-word reconstruction mismatch for " + str(x));
  return w;
}

// ---- PermGroup ----

PermGroup::PermGroup(int degree, std::vector<Elem> gens, Alphabet alphabet)
    : degree_(degree), gens_(std::move(gens)), alphabet_(std::move(alphabet)) {
  for (const auto& g : gens_) {
    std::vector<long long> s = g;
    std::sort(s.begin(), s.end());
    std::vector<long long> id(static_cast<std::size_t>(degree_));
    std::iota(id.begin(), id.end(), 0);
    if (s != id) throw Error(ErrorKind::InvalidParams, "generator is not a permutation of 0.." + std::to_string(degree_ - 1));
  }
  if (alphabet_.size() == 0) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < gens_.size(); ++i) names.push_back("s" + std::to_string(i));
    alphabet_ = Alphabet(names);
  }
  std::map<Elem, long long> dist{{identity(), 0}};
  std::deque<Elem> q{identity()};
  while (!q.empty()) {
    Elem x = q.front();
    q.pop_front();
    for (const auto& g : gens_) {
      for (const Elem& s : {g, inv(g)}) {
        Elem y = mul(x, s);
        if (dist.emplace(y, dist[x] + 1).second) {
          if (dist.size() > 5040) throw Error(ErrorKind::SizeLimit, "permutation group too large");
          q.push_back(y);
        }
      }
    }
  }
  for (const auto& [e, d] : dist) {
    elements_.push_back(e);
    lengths_.push_back(d);
  }
  std::vector<std::size_t> idx(elements_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
    if (lengths_[a] != lengths_[b]) return lengths_[a] < lengths_[b];
    return elements_[a] < elements_[b];
  });
  std::vector<Elem> e2;
  std::vector<long long> l2;
  for (auto i : idx) {
    e2.push_back(elements_[i]);
    l2.push_back(lengths_[i]);
  }
  elements_ = std::move(e2);
  lengths_ = std::move(l2);
}

std::string PermGroup::name() const { return "Perm(" + std::to_string(degree_) + ")[" + std::to_string(elements_.size()) + "]"; }

Elem PermGroup::identity() const {
  Elem e(static_cast<std::size_t>(degree_));
  std::iota(e.begin(), e.end(), 0);
  return e;
}

Elem PermGroup::mul(const Elem& x, const Elem& y) const {
  Elem r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = x[static_cast<std::size_t>(y[i])];
  return r;
}

Elem PermGroup::inv(const Elem& x) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[static_cast<std::size_t>(x[i])] = static_cast<long long>(i);
  return r;
}

std::string PermGroup::str(const Elem& x) const {
  std::string s;
  std::vector<bool> seen(x.size(), false);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (seen[i] || x[i] == static_cast<long long>(i)) continue;
    s += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      s += (first ? "" : " ") + std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(x[j]);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

long long PermGroup::length(const Elem& x) const {
  auto it = std::find(elements_.begin(), elements_.end(), x);
  if (it == elements_.end()) return 0;  // during construction
  return lengths_[static_cast<std::size_t>(it - elements_.begin())];
}

}  // namespace semik
