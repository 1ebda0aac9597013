#pragma once

// Layered run configuration: schema defaults < presets < config file <
// --set overrides < --seed. Every key belongs to the schema; unknown keys are
// rejected with the offending source named.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <ubdm/coherence.hpp>
#include <ubdm/field.hpp>
#include <ubdm/halo.hpp>

namespace ubdm::cli {

enum class ValueType { Number, Integer, Boolean, String };

struct KeySpec {
  std::string key;  // "section.name"
  ValueType type;
  std::optional<std::string> default_value;
  std::string doc;
};

const std::vector<KeySpec>& schema();
const KeySpec* find_key(std::string_view key);

struct Entry {
  std::string value;
  std::string source;  // "default", "preset:admx", "config:<path>", "--set", "--seed"
};

class RunConfig {
 public:
  //! Schema defaults only.
  RunConfig();

  //! Merge an INI document. Throws ConfigError naming `source` on parse
  //! failures, unknown sections/keys, or values of the wrong type.
  void merge_ini(std::string_view text, const std::string& source);
  void merge_file(const std::string& path);
  void merge_preset(const std::string& name);
  //! "section.key=value"
  void apply_override(std::string_view assignment, const std::string& source = "--set");
  void set(const std::string& key, const std::string& value, const std::string& source);

  bool has(const std::string& key) const;
  bool user_set(const std::string& key) const;
  const std::string& raw(const std::string& key) const;

  double number(const std::string& key) const;
  std::optional<double> optional_number(const std::string& key) const;
  long integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  std::string string(const std::string& key) const;
  std::optional<std::string> optional_string(const std::string& key) const;
  std::vector<std::string> list(const std::string& key) const;

  //! Resolved entries (set keys only), sorted by key.
  const std::map<std::string, Entry>& entries() const { return entries_; }

  // Typed views
  AxionModelConstants model_constants() const;
  AxionParams axion() const;
  double omega_phi_prime() const;
  VelocityDistribution halo() const;
  //! Named halo (shm | shmpp) sharing the configured lab speed, v_esc and v_v.
  VelocityDistribution halo_named(const std::string& model) const;
  HaloscopeParams haloscope() const;
  FieldQuantizationContext context() const;
  int workers() const;
  std::uint64_t seed() const;

 private:
  std::map<std::string, Entry> entries_;
};

std::vector<std::string> split_list(std::string_view text);

}  // namespace ubdm::cli
