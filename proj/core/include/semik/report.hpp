#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace semik {

inline constexpr const char* kSchemaVersion = "1.0";

std::string version();

std::vector<std::string> subcommands();

// Flat key = value configuration; grammar in docs/config-grammar.md.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);

  std::string subcommand;
  std::optional<std::string> out;
  int threads = 1;
  std::vector<std::string> seed_order;  // alphabet order for rewriting

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& dflt) const;
  // Positive integer, ConfigError otherwise.
  int get_positive(const std::string& key, int dflt) const;
  long long get_int(const std::string& key, long long dflt) const;
  // Later calls overwrite; command-line flags are applied after the file.
  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& values() const { return values_; }

  // Known keys for the subcommand, positive bounds, total seed order.
  void validate() const;
  nlohmann::json to_json() const;

 private:
  std::map<std::string, std::string> values_;
};

// Keys accepted by a subcommand, besides the global ones.
const std::vector<std::string>& config_keys(const std::string& subcommand);

// {schema_version, tool, version, subcommand, config, result}
nlohmann::json make_report(const RunConfig& cfg, nlohmann::json result);

// Error report in the same envelope; partial results go under "partial".
nlohmann::json make_error_report(const RunConfig& cfg, const std::string& kind, const std::string& message,
                                 const nlohmann::json& payload);

// Runs the named pipeline and returns the full report.
nlohmann::json run(const RunConfig& cfg);

}  // namespace semik
