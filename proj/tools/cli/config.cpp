#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <ubdm/errors.hpp>

#include "presets.hpp"

namespace ubdm::cli {

namespace {

using T = ValueType;

std::vector<KeySpec> build_schema() {
  return {
      {"axion.mass_eV", T::Number, "1e-5", "axion mass in eV (derived from f_a_GeV when only that is given)"},
      {"axion.f_a_GeV", T::Number, std::nullopt, "symmetry-breaking scale in GeV"},
      {"axion.g_agg_per_GeV", T::Number, std::nullopt, "photon coupling in 1/GeV (derived from f_a when unset)"},
      {"axion.g_gamma", T::Number, "0.97", "g_agg = alpha g_gamma / (pi f_a); empty to unset"},
      {"axion.mass_fa_constant", T::Number, "5.7e6", "m_a f_a in eV GeV"},

      {"halo.model", T::String, "shm", "shm | shmpp | tabulated"},
      {"halo.v_g_x", T::Number, "0", "lab velocity, m/s"},
      {"halo.v_g_y", T::Number, "0", "lab velocity, m/s"},
      {"halo.v_g_z", T::Number, "232e3", "lab velocity, m/s"},
      {"halo.v_esc", T::Number, "544e3", "escape speed, m/s"},
      {"halo.v_v", T::Number, "299792.458", "isotropic dispersion, m/s"},
      {"halo.eta", T::Number, "0.2", "SHM++ Sausage fraction"},
      {"halo.beta", T::Number, "0.9", "SHM++ Sausage anisotropy"},
      {"halo.sigma_r", T::Number, std::nullopt, "explicit Sausage dispersion, m/s"},
      {"halo.sigma_theta", T::Number, std::nullopt, "explicit Sausage dispersion, m/s"},
      {"halo.sigma_phi", T::Number, std::nullopt, "explicit Sausage dispersion, m/s"},
      {"halo.table", T::String, std::nullopt, "two-column speed table (m/s, density) for model=tabulated"},

      {"haloscope.omega_b", T::Number, std::nullopt, "cavity frequency, rad/s (default omega_phi')"},
      {"haloscope.Q_c", T::Number, "1e4", "cavity quality factor"},
      {"haloscope.V_prime", T::Number, "0.1", "effective cavity volume, m^3"},
      {"haloscope.B0", T::Number, "8", "magnetic field, T"},

      {"context.V", T::Number, "1e63", "quantization volume, m^3"},
      {"context.rho_DM_GeV_cm3", T::Number, "0.3", "local dark-matter density, GeV/cm^3"},

      {"numerics.quad_abs_tol", T::Number, "1e-9", "absolute tolerance of the g1 envelope quadrature"},
      {"numerics.workers", T::Integer, "1", "worker threads (0 = hardware concurrency)"},
      {"numerics.seed", T::Integer, "0", "seed for stochastic estimates"},

      {"markov.Q_a", T::Number, "1e6", "axion quality factor"},

      {"lindblad.n_eff", T::Number, "0.5", "bath occupation"},
      {"lindblad.gamma", T::Number, "1", "axion-bath rate, rad/s"},
      {"lindblad.N_max", T::Integer, "30", "highest Fock level"},
      {"lindblad.T", T::Number, "10", "evolution time, s"},
      {"lindblad.dt", T::Number, "1e-3", "maximum step, s"},
      {"lindblad.initial", T::String, "vacuum", "vacuum | fock | thermal"},
      {"lindblad.initial_n", T::Number, "1", "Fock level or thermal occupation of the initial state"},
      {"lindblad.env_kappa", T::Number, "0", "environment rate, rad/s"},
      {"lindblad.env_nth", T::Number, "0", "environment occupation"},
      {"lindblad.rotating_frame", T::Boolean, "true", "drop the free rotation"},
      {"lindblad.omega_b", T::Number, "0", "mode frequency used in the lab frame, rad/s"},
      {"lindblad.samples", T::Integer, "101", "trajectory rows"},
      {"lindblad.truncation", T::String, "error", "error | warn"},

      {"psd.Q_a", T::Number, "1e6", "axion quality factor"},
      {"psd.n_th", T::Number, "0", "flat haloscope input occupation"},
      {"psd.n_a", T::Number, "1", "flat axion-cavity input occupation"},
      {"psd.g2c", T::Number, std::nullopt, "two-cavity coupling, rad/s (default 0.05 sqrt(kappa_a kappa_c))"},
      {"psd.points", T::Integer, "4096", "grid points"},
      {"psd.span_kappa", T::Number, "40", "full grid span in cavity linewidths"},
      {"psd.input_table", T::String, std::nullopt, "tabulated S_ain (omega rad/s, occupation density)"},
      {"psd.window", T::String, "none", "none | hann, applied before the G1 transform"},

      {"coherence.states", T::String, "shm,shmpp,coherent", "comma list of shm | shmpp | thermal | coherent | spectrum"},
      {"coherence.Q_a", T::Number, "1e6", "sets tau_coh = 2 Q_a / omega_phi'"},
      {"coherence.tau_max", T::Number, "5", "largest lag in units of tau_coh"},
      {"coherence.points", T::Integer, "201", "lags from 0 to tau_max"},
      {"coherence.mc_samples", T::Integer, "0", "Monte Carlo cross-check samples per thermal lag (0 = off)"},

      {"counting.Q_a", T::Number, "1e6", "field bandwidth delta_omega_a = omega_a / Q_a"},
      {"counting.delta_t", T::Number, std::nullopt, "detector resolution time, s (default: centre of the valid window)"},
      {"counting.hierarchy_ratio", T::Number, "20", "factor meaning much less than"},
      {"counting.H_omega_a", T::Number, std::nullopt, "filter response at omega_a, s (default: cavity Lorentzian)"},
      {"counting.state", T::String, "thermal", "thermal | coherent"},
      {"counting.tau_max", T::Number, "5", "largest separation in units of tau_coh"},
      {"counting.points", T::Integer, "11", "separations from delta_t to tau_max"},

      {"sweep.command", T::String, "neff", "verb run at every point"},
      {"sweep.axis", T::String, "axion.mass_eV", "numeric key to vary"},
      {"sweep.values", T::String, std::nullopt, "comma list of values"},
  };
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::optional<long> parse_long(std::string_view s) {
  long value = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::optional<bool> parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  return std::nullopt;
}

void check_type(const KeySpec& spec, const std::string& value, const std::string& source) {
  bool ok = true;
  switch (spec.type) {
    case T::Number: ok = parse_double(value).has_value(); break;
    case T::Integer: ok = parse_long(value).has_value(); break;
    case T::Boolean: ok = parse_bool(value).has_value(); break;
    case T::String: break;
  }
  if (!ok) {
    static const char* names[] = {"number", "integer", "boolean", "string"};
    throw ConfigError(source + ": " + spec.key + " = '" + value + "' is not a valid " +
                      names[static_cast<int>(spec.type)]);
  }
}

}  // namespace

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> s = build_schema();
  return s;
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& spec : schema()) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    auto item = trim(text.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

RunConfig::RunConfig() {
  for (const auto& spec : schema()) {
    if (spec.default_value) entries_[spec.key] = {*spec.default_value, "default"};
  }
}

void RunConfig::set(const std::string& key, const std::string& value, const std::string& source) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError(source + ": unknown key '" + key + "'");
  const std::string v = trim(value);
  if (v.empty()) {
    entries_.erase(key);
    return;
  }
  check_type(*spec, v, source);
  entries_[key] = {v, source};
}

void RunConfig::merge_ini(std::string_view text, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  // '#' comment lines are accepted alongside the INI-native ';'
  std::string cleaned;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    const auto first = line.find_first_not_of(" \t");
    cleaned += (first != std::string::npos && line[first] == '#') ? "" : line;
    cleaned += '\n';
  }
  std::istringstream in{cleaned};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(source + ": key '" + section + "' must live inside a [section]");
    }
    const bool known = std::any_of(schema().begin(), schema().end(), [&](const KeySpec& k) {
      return k.key.compare(0, section.size() + 1, section + ".") == 0;
    });
    if (!known) throw ConfigError(source + ": unknown section [" + section + "]");
    for (const auto& [name, leaf] : body) {
      set(section + "." + name, leaf.get_value<std::string>(), source);
    }
  }
}

void RunConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  merge_ini(text.str(), "config:" + path);
}

void RunConfig::merge_preset(const std::string& name) {
  const auto text = builtin_preset(name);
  if (!text) {
    std::string known;
    for (const auto& n : builtin_preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (available: " + known + ")");
  }
  merge_ini(*text, "preset:" + name);
}

void RunConfig::apply_override(std::string_view assignment, const std::string& source) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(source + ": expected section.key=value, got '" + std::string(assignment) + "'");
  }
  set(trim(assignment.substr(0, eq)), std::string(assignment.substr(eq + 1)), source);
}

bool RunConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

bool RunConfig::user_set(const std::string& key) const {
  const auto it = entries_.find(key);
  return it != entries_.end() && it->second.source != "default";
}

const std::string& RunConfig::raw(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required configuration key '" + key + "'");
  return it->second.value;
}

double RunConfig::number(const std::string& key) const { return *parse_double(raw(key)); }

std::optional<double> RunConfig::optional_number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return number(key);
}

long RunConfig::integer(const std::string& key) const { return *parse_long(raw(key)); }

bool RunConfig::boolean(const std::string& key) const { return *parse_bool(raw(key)); }

std::string RunConfig::string(const std::string& key) const { return raw(key); }

std::optional<std::string> RunConfig::optional_string(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return raw(key);
}

std::vector<std::string> RunConfig::list(const std::string& key) const {
  return split_list(raw(key));
}

AxionModelConstants RunConfig::model_constants() const {
  AxionModelConstants c;
  c.mass_fa_product = number("axion.mass_fa_constant");
  c.g_gamma = optional_number("axion.g_gamma");
  return c;
}

AxionParams RunConfig::axion() const {
  const auto constants = model_constants();
  AxionParams a;
  try {
    a.f_a_GeV = optional_number("axion.f_a_GeV");
    if (a.f_a_GeV && !user_set("axion.mass_eV")) {
      a.mass_eV = mass_fa_convert(std::nullopt, a.f_a_GeV, constants.mass_fa_product).mass_eV;
    } else {
      a.mass_eV = number("axion.mass_eV");
      if (!(a.mass_eV > 0.0)) throw DomainError("mass_eV must be positive");
    }
    if (const auto g = optional_number("axion.g_agg_per_GeV")) {
      a.g_agg_per_GeV = *g;
    } else if (constants.g_gamma) {
      const double fa = a.f_a_GeV ? *a.f_a_GeV : constants.mass_fa_product / a.mass_eV;
      a.g_agg_per_GeV = photon_coupling_from_fa(fa, constants);
    }
    a.validate(constants);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[axion] ") + e.what());
  }
  return a;
}

double RunConfig::omega_phi_prime() const {
  const Vec3 v_g(number("halo.v_g_x"), number("halo.v_g_y"), number("halo.v_g_z"));
  return doppler_shifted_frequency(axion().mass_eV, v_g);
}

VelocityDistribution RunConfig::halo_named(const std::string& model) const {
  const Vec3 v_g(number("halo.v_g_x"), number("halo.v_g_y"), number("halo.v_g_z"));
  if (model == "shm") {
    ShmParams p;
    p.v_g = v_g;
    p.v_esc = number("halo.v_esc");
    p.v_v = number("halo.v_v");
    return VelocityDistribution::shm(p);
  }
  if (model == "shmpp") {
    ShmPlusPlusParams p;
    p.v_g = v_g;
    p.v_esc = number("halo.v_esc");
    p.v_v = number("halo.v_v");
    p.eta = number("halo.eta");
    p.beta = number("halo.beta");
    const auto sr = optional_number("halo.sigma_r");
    const auto st = optional_number("halo.sigma_theta");
    const auto sp = optional_number("halo.sigma_phi");
    if (sr || st || sp) {
      if (!(sr && st && sp)) {
        throw ConfigError("[halo] sigma_r, sigma_theta and sigma_phi must be given together");
      }
      p.sausage_sigma = Vec3(*sr, *st, *sp);
    }
    return VelocityDistribution::shm_plus_plus(p);
  }
  if (model == "tabulated") {
    const auto path = optional_string("halo.table");
    if (!path) throw ConfigError("[halo] model = tabulated needs halo.table");
    return VelocityDistribution::load_table(*path);
  }
  throw ConfigError("[halo] unknown model '" + model + "' (shm | shmpp | tabulated)");
}

VelocityDistribution RunConfig::halo() const { return halo_named(string("halo.model")); }

HaloscopeParams RunConfig::haloscope() const {
  const double omega_b = optional_number("haloscope.omega_b").value_or(omega_phi_prime());
  return HaloscopeParams::from_quality_factor(omega_b, number("haloscope.V_prime"),
                                              number("haloscope.B0"), number("haloscope.Q_c"));
}

FieldQuantizationContext RunConfig::context() const {
  return FieldQuantizationContext::from_GeV_per_cm3(number("context.rho_DM_GeV_cm3"),
                                                    number("context.V"));
}

int RunConfig::workers() const {
  const long w = integer("numerics.workers");
  if (w < 0) throw ConfigError("numerics.workers must be non-negative");
  return static_cast<int>(w);
}

std::uint64_t RunConfig::seed() const {
  const long s = integer("numerics.seed");
  if (s < 0) throw ConfigError("numerics.seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

}  // namespace ubdm::cli
