#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semik/errors.hpp"
#include "semik/report.hpp"

namespace {

struct Flag {
  CLI::Option* opt;
  std::string key;
};

struct Sub {
  CLI::App* app;
  std::map<std::string, std::string> values;
  std::vector<Flag> flags;

  void add(const std::string& names, const std::string& key, const std::string& help) {
    flags.push_back({app->add_option(names, values[key], help), key});
  }
  void add_switch(const std::string& names, const std::string& key, const std::string& value, const std::string& help) {
    auto* o = app->add_flag(names, help);
    flags.push_back({o, key});
    values[key] = value;
  }
};

void add_preset_flags(Sub& s) {
  s.add("--preset", "preset", "artin, bs, one_relator, numerical, free, abelian, congruence");
  s.add("-n", "n", "number of generators");
  s.add("-m", "m", "artin: common Coxeter-type entry (integer >= 2 or inf)");
  s.add("-k", "k", "bs: exponent k");
  s.add("-l", "l", "bs: exponent l");
  s.add("--gens", "gens", "numerical: comma-separated generators");
  s.add("-u", "u", "one_relator: left word");
  s.add("-v", "v", "one_relator: right word");
  s.add("--generators", "generators", "one_relator: count, comma-separated names, or inf");
}

void write(const nlohmann::json& report, const std::optional<std::string>& out) {
  const std::string text = report.dump(2) + "\n";
  if (out) {
    std::ofstream f(*out);
    if (!f) throw semik::Error(semik::ErrorKind::ConfigError, "cannot write " + *out);
    f << text;
  } else {
    std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite verification and K-theory reports for semigroup C*-algebras", "semik"};
  app.set_version_flag("--version", semik::version());
  std::string config_path, out_path, seed_order;
  int threads = 0;
  app.add_option("--config", config_path, "structured-text run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--threads", threads, "worker threads (positive)");
  app.add_option("--seed-order", seed_order, "comma-separated alphabet order for rewriting");
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::map<std::string, Sub> subs;
  auto make = [&](const std::string& name, const std::string& help) -> Sub& {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, help);
    return s;
  };

  {
    Sub& s = make("hull", "left inverse hull: laws, independence, right LCM, Toeplitz");
    add_preset_flags(s);
    s.add("--presentation", "presentation", "presentation file");
    s.add("--depth", "depth", "zigzag depth");
    s.add("--radius", "radius", "test ball radius");
    s.add("--max-elements", "max_elements", "hull size cap");
    s.add("--check", "check", "comma list of laws, independence, rlcm, toeplitz");
    s.add("--element", "element", "group word for the Toeplitz check");
  }
  for (const char* name : {"paction", "orbits"}) {
    Sub& s = make(name, std::string(name) == "paction" ? "partial action table and verification"
                                                      : "orbits, stabilizers and Xi_d checks");
    add_preset_flags(s);
    s.add("--from-file", "from_file", "action spec (JSON)");
    s.add("--from-hull", "from_hull", "presentation file; the action comes from its hull");
    s.add("--example", "example", "bundled action");
    s.add("--size", "size", "size parameter of the bundled action");
    s.add("--depth", "depth", "zigzag depth");
    s.add("--radius", "radius", "test ball radius");
    s.add("--max-elements", "max_elements", "hull size cap");
    if (std::string(name) == "paction") s.add_switch("--roundtrip", "roundtrip", "true", "also check the ** round trip");
    else s.add_switch("--no-verify", "verify", "false", "skip the Xi_d checks");
  }
  {
    Sub& s = make("smashlab", "finite smash-product stages and their identities");
    s.add("--action", "action", "bundled action name or JSON spec (default z2_swap)");
    s.add("--size", "size", "size parameter of the bundled action");
    s.add("--sigma", "sigma", "comma-separated group elements");
    s.add("--subgroup", "subgroup", "comma-separated group elements");
    s.add("--seed", "seed", "comma-separated idempotents");
    s.add("--verify", "verify", "comma list of phi, psi, irho, nilpotent, conjugation, neumann, all");
    s.add("--cap", "cap", "closure safety cap");
    s.add("--redundant-len", "redundant_len", "factor sequence length for the RedundantFactor check");
  }
  {
    Sub& s = make("ktheory", "K-theory expression with its assumption ledger");
    add_preset_flags(s);
    s.add("--from", "from", "orbits report (JSON)");
    s.add("--route", "route", "partial-crossed-product, inverse-semigroup or semigroup");
    s.add("--bc", "bc", "Baum-Connes variant: coefficients or strong");
    s.add("--depth", "depth", "verification depth");
    s.add("--radius", "radius", "verification radius");
    s.add("--table", "table", "extra K-theory table (JSON)");
  }
  {
    Sub& s = make("tiling", "patch semigroup Gamma(D) of a finite point set");
    s.add("--points", "points", "\"0,1,2\" or \"0,0;1,0\"");
    s.add("--adjacency", "adjacency", "adjacency step file");
    s.add("--max-points", "max_points", "patch enumeration cap");
    s.add("--table-points", "table_points", "exhaustive table up to this many points");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  semik::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = semik::RunConfig::load(config_path);
    for (auto& [name, s] : subs) {
      if (!s.app->parsed()) continue;
      if (!cfg.subcommand.empty() && cfg.subcommand != name)
        throw semik::Error(semik::ErrorKind::ConfigError, "config is for " + cfg.subcommand + ", command line asks for " + name);
      cfg.subcommand = name;
      for (const auto& f : s.flags)
        if (f.opt->count() > 0) cfg.set(f.key, s.values[f.key]);
    }
    if (!out_path.empty()) cfg.out = out_path;
    if (threads != 0) cfg.set("threads", std::to_string(threads));
    if (!seed_order.empty()) cfg.set("seed_order", seed_order);
    if (cfg.subcommand.empty()) {
      std::cerr << app.help();
      return 1;
    }
  } catch (const semik::Error& e) {
    std::cerr << "semik: " << e.what() << "\n";
    return 2;
  }

  try {
    write(semik::run(cfg), cfg.out);
    return 0;
  } catch (const semik::Error& e) {
    std::cerr << "semik: " << e.what() << "\n";
    try {
      write(semik::make_error_report(cfg, semik::to_string(e.kind()), e.what(), e.payload()), cfg.out);
    } catch (const std::exception&) {
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "semik: internal error: " << e.what() << "\n";
    return 3;
  }
}
