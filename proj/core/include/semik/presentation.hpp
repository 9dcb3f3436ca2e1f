#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semik/monoid.hpp"
#include "semik/rewriting.hpp"
#include "semik/words.hpp"

namespace semik {

struct MonoidPresentation {
  Alphabet alphabet;
  std::vector<std::pair<Word, Word>> relations;

  bool length_preserving() const;
  std::string str() const;
  nlohmann::json to_json() const;
};

enum class Membership { InP, NotInP, Unknown };
const char* to_string(Membership m);

struct MembershipResult {
  Membership verdict = Membership::Unknown;
  Word word;           // for InP
  std::string method;  // how the verdict was reached
  nlohmann::json to_json(const Alphabet& a) const;
};

// A cited or verified fact about a preset, with provenance.
struct Fact {
  std::string name;
  bool value = true;
  std::string provenance;  // verified-exact | verified-to-bound | assumed
  nlohmann::json bound;    // for verified-to-bound
  std::string reason;
  nlohmann::json to_json() const;
};

// A monoid presentation together with whatever exact machinery is available
// for it: a confluent rewriting system, a group-embedded model, or word classes.
struct Preset {
  std::string family;
  nlohmann::json params;
  MonoidPresentation presentation;
  std::optional<RewritingSystem> monoid_rs;
  ModelPtr model;
  std::shared_ptr<const HomogeneousModel> classes;
  std::optional<RewritingSystem> group_rs;  // on the doubled alphabet, letter 2i+1 = inverse of i
  bool symbolic = false;                    // infinite generating set; nothing is computed
  std::vector<Fact> facts;
  std::vector<std::string> notes;

  Word normal_form(const Word& w) const;
  MembershipResult group_membership(const GroupWord& g, int depth) const;
  const MonoidOracle* oracle() const;
  const Fact* fact(const std::string& name) const;
  nlohmann::json to_json() const;
};

// Families: free(n), abelian(n), numerical(gens), artin(n, m | M), bs(k, l),
// one_relator(generators, u, v), congruence (stub, always InvalidParams).
Preset make_preset(const std::string& family, const nlohmann::json& params);

// Structured-text presentation file; grammar in docs/config-grammar.md.
Preset parse_presentation(const std::string& text);
Preset load_presentation_file(const std::string& path);

}  // namespace semik
