#include "app.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include <ubdm/errors.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace ubdm::cli {

namespace {

struct Options {
  std::string verb;
  std::string config;
  std::string out_dir = "ubdm-out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> presets;
  std::vector<std::string> overrides;
  std::optional<int> workers;
  bool list_keys = false;
};

RunConfig resolve(const Options& o) {
  RunConfig cfg;
  for (const auto& p : o.presets) cfg.merge_preset(p);
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv("UBDM_CONFIG")) path = env;
  }
  if (!path.empty()) cfg.merge_file(path);
  for (const auto& s : o.overrides) cfg.apply_override(s);
  if (o.workers) cfg.set("numerics.workers", std::to_string(*o.workers), "--workers");
  if (o.seed) cfg.set("numerics.seed", std::to_string(*o.seed), "--seed");
  return cfg;
}

void print_keys(std::ostream& out) {
  for (const auto& k : schema()) {
    out << k.key << " = " << k.default_value.value_or("<unset>") << "    # " << k.doc << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open-quantum-system simulator for axion / ultralight dark-matter haloscopes"};
  app.set_version_flag("--version", std::string("ubdm ") + UBDM_VERSION);
  Options o;
  std::string verb_help = "one of:";
  for (const auto& v : verbs()) verb_help += " " + v;
  app.add_option("verb", o.verb, verb_help);
  app.add_option("--config", o.config, "INI configuration file (default: $UBDM_CONFIG)");
  app.add_option("--out", o.out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for stochastic estimates");
  app.add_option("--preset", o.presets, "built-in preset, repeatable (shm, shmpp, admx, haystac)");
  app.add_option("--set", o.overrides, "override section.key=value, repeatable");
  app.add_option("--workers", o.workers, "worker threads; outputs do not depend on it");
  app.add_flag("--list-keys", o.list_keys, "print every configuration key with its default");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (o.list_keys) {
    print_keys(out);
    return kOk;
  }
  if (!is_verb(o.verb)) {
    err << "error: expected a verb (" << verb_help << ")\n";
    return kConfigError;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = resolve(o);
    const CommandOutput result = run_command(o.verb, cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::vector<OutputFile> files = result.files;
    files.push_back({std::string(kManifestName), manifest_json(o.verb, cfg, result.files, wall)});
    write_files(o.out_dir, files);
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    out << o.verb << ": wrote " << files.size() << " file(s) to " << o.out_dir << '\n';
    return kOk;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << '\n';
    return kTruncationError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace ubdm::cli
