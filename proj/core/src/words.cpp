#include "semik/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "semik/errors.hpp"

namespace semik {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error(ErrorKind::InvalidParams, "empty generator name");
    if (!seen.insert(n).second) throw Error(ErrorKind::InvalidParams, "duplicate generator '" + n + "'");
    if (n == "1") throw Error(ErrorKind::InvalidParams, "'1' is reserved for the empty word");
  }
}

Alphabet Alphabet::letters(const std::string& chars) {
  std::vector<std::string> names;
  for (char c : chars) names.emplace_back(1, c);
  return Alphabet(std::move(names));
}

int Alphabet::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool Alphabet::single_char() const {
  return std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
}

GroupWord free_reduce(GroupWord w) {
  GroupWord out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

GroupWord to_group_word(const Word& w) {
  GroupWord g;
  g.reserve(w.size());
  for (int x : w) g.push_back({x, 1});
  return g;
}

GroupWord inverse(const GroupWord& w) {
  GroupWord r(w.rbegin(), w.rend());
  for (auto& l : r) l.exp = -l.exp;
  return r;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return free_reduce(std::move(r));
}

bool is_positive(const GroupWord& w) {
  return std::all_of(w.begin(), w.end(), [](const GroupLetter& l) { return l.exp > 0; });
}

Word positive_part(const GroupWord& w) {
  Word r;
  for (const auto& l : w) {
    if (l.exp < 0) throw Error(ErrorKind::InvalidParams, "word has inverse letters");
    r.push_back(l.gen);
  }
  return r;
}

namespace {

std::string render(const std::vector<std::pair<int, int>>& runs, const Alphabet& a) {
  if (runs.empty()) return "1";
  const bool compact = a.single_char();
  std::string out;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += a.name(runs[i].first);
    if (runs[i].second != 1) out += "^" + std::to_string(runs[i].second);
  }
  return out;
}

}  // namespace

std::string to_string(const Word& w, const Alphabet& a) { return to_string(to_group_word(w), a); }

std::string to_string(const GroupWord& w, const Alphabet& a) {
  std::vector<std::pair<int, int>> runs;
  for (const auto& l : w) {
    if (!runs.empty() && runs.back().first == l.gen && (runs.back().second > 0) == (l.exp > 0)) {
      runs.back().second += l.exp;
    } else {
      runs.emplace_back(l.gen, l.exp);
    }
  }
  return render(runs, a);
}

GroupWord parse_group_word(const std::string& text, const Alphabet& a) {
  GroupWord out;
  std::size_t i = 0;
  const bool compact = a.single_char();
  auto skip_sep = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*' || text[i] == '.')) ++i;
  };
  while (true) {
    skip_sep();
    if (i >= text.size()) break;
    std::string name;
    if (compact) {
      name = std::string(1, text[i++]);
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '*' &&
             text[i] != '^' && text[i] != '.')
        name += text[i++];
    }
    if (name == "1") continue;
    int g = a.index(name);
    if (g < 0) throw Error(ErrorKind::ParseError, "unknown generator '" + name + "' in '" + text + "'");
    long long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw Error(ErrorKind::ParseError, "missing exponent in '" + text + "'");
      try {
        exp = std::stoll(text.substr(start, i - start));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad exponent in '" + text + "'");
      }
    }
    if (exp > 100000 || exp < -100000) throw Error(ErrorKind::ParseError, "exponent too large in '" + text + "'");
    int sgn = exp < 0 ? -1 : 1;
    for (long long k = 0; k < (exp < 0 ? -exp : exp); ++k) out.push_back({g, sgn});
  }
  return free_reduce(std::move(out));
}

Word parse_word(const std::string& text, const Alphabet& a) {
  GroupWord g = parse_group_word(text, a);
  if (!is_positive(g)) throw Error(ErrorKind::ParseError, "monoid word may not contain inverses: '" + text + "'");
  return positive_part(g);
}

}  // namespace semik
