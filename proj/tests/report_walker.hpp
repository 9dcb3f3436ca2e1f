#pragma once

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace semik::testing {

// Paths of nodes whose verdict lacks the provenance or bound it needs.
inline void walk_report(const nlohmann::json& j, const std::string& path, std::vector<std::string>& bad) {
  static const std::set<std::string> needs_provenance{"Holds", "RightLCM", "EqualToRadius", "Constructible"};
  static const std::set<std::string> needs_bound{"RightLCM", "EqualToRadius", "FailsToDepth"};
  static const std::set<std::string> provenances{"verified-exact", "verified-to-bound", "assumed"};
  if (j.is_object()) {
    if (j.contains("verdict") && j["verdict"].is_string()) {
      const std::string v = j["verdict"];
      if (needs_provenance.count(v) && !j.contains("provenance")) bad.push_back(path + ": " + v + " without provenance");
      if (needs_bound.count(v) && (!j.contains("bound") || j["bound"].is_null()))
        bad.push_back(path + ": " + v + " without bound");
    }
    if (j.contains("provenance") && j["provenance"].is_string()) {
      const std::string p = j["provenance"];
      if (!provenances.count(p)) bad.push_back(path + ": unknown provenance " + p);
      if (p == "verified-to-bound" && (!j.contains("bound") || j["bound"].is_null()))
        bad.push_back(path + ": verified-to-bound without bound");
    }
    for (auto it = j.begin(); it != j.end(); ++it) walk_report(it.value(), path + "/" + it.key(), bad);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) walk_report(j[i], path + "/" + std::to_string(i), bad);
  }
}

inline std::vector<std::string> report_violations(const nlohmann::json& j) {
  std::vector<std::string> bad;
  walk_report(j, "", bad);
  return bad;
}

}  // namespace semik::testing
