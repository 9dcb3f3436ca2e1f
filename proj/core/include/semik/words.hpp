#pragma once

#include <string>
#include <vector>

namespace semik {

// Interned generator names; a generator is its index in the alphabet.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  static Alphabet letters(const std::string& chars);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;  // -1 if absent
  bool single_char() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using Word = std::vector<int>;

struct GroupLetter {
  int gen;
  int exp;  // +1 or -1
  friend bool operator==(const GroupLetter& a, const GroupLetter& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
};

using GroupWord = std::vector<GroupLetter>;

GroupWord free_reduce(GroupWord w);
GroupWord to_group_word(const Word& w);
GroupWord inverse(const GroupWord& w);
GroupWord concat(const GroupWord& a, const GroupWord& b);
bool is_positive(const GroupWord& w);
Word positive_part(const GroupWord& w);  // requires is_positive

// Text forms: generators, optional ^n exponents (negative allowed), "1" for
// the empty word. Single-character alphabets may be written without spaces
// ("ab^2a^-1"); otherwise tokens are separated by spaces or '*'.
std::string to_string(const Word& w, const Alphabet& a);
std::string to_string(const GroupWord& w, const Alphabet& a);
GroupWord parse_group_word(const std::string& text, const Alphabet& a);
Word parse_word(const std::string& text, const Alphabet& a);

}  // namespace semik
