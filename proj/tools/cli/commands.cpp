#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include <ubdm/ubdm.hpp>
#include <ubdm/parallel.hpp>

#ifndef UBDM_VERSION
#define UBDM_VERSION "unknown"
#endif

namespace ubdm::cli {

namespace {

Json halo_json(const RunConfig& cfg) {
  Json j;
  j["model"] = cfg.string("halo.model");
  j["v_g_m_s"] = Json::array(
      {cfg.number("halo.v_g_x"), cfg.number("halo.v_g_y"), cfg.number("halo.v_g_z")});
  j["v_esc_m_s"] = cfg.number("halo.v_esc");
  j["v_v_m_s"] = cfg.number("halo.v_v");
  if (cfg.string("halo.model") == "shmpp") {
    j["eta"] = cfg.number("halo.eta");
    j["beta"] = cfg.number("halo.beta");
  }
  if (const auto t = cfg.optional_string("halo.table")) j["table"] = *t;
  return j;
}

double lab_speed(const RunConfig& cfg) {
  return Vec3(cfg.number("halo.v_g_x"), cfg.number("halo.v_g_y"), cfg.number("halo.v_g_z"))
      .norm();
}

std::vector<double> linspace(double a, double b, long n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (long i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return out;
}

struct PsdSetup {
  TwoCavityParams params;
  InputSpectra inputs;
  std::vector<double> omega;
};

PsdSetup psd_setup(const RunConfig& cfg) {
  const auto hs = cfg.haloscope();
  PsdSetup s;
  s.params.omega_b = hs.omega_b;
  s.params.kappa_c = hs.kappa_c;
  s.params.omega_phi_prime = cfg.omega_phi_prime();
  s.params.Q_a = cfg.number("psd.Q_a");
  s.params.g2c = cfg.optional_number("psd.g2c")
                     .value_or(0.05 * std::sqrt(s.params.kappa_a() * s.params.kappa_c));
  s.inputs = InputSpectra::flat(cfg.number("psd.n_th"), cfg.number("psd.n_a"));
  if (const auto path = cfg.optional_string("psd.input_table")) {
    s.inputs.S_ain = InputSpectra::tabulated(read_two_column(*path));
  }
  const long points = cfg.integer("psd.points");
  if (points < 2) throw ConfigError("psd.points must be at least 2");
  s.omega = uniform_grid(hs.omega_b, 0.5 * cfg.number("psd.span_kappa") * hs.kappa_c,
                         static_cast<int>(points));
  return s;
}

Window parse_window(const std::string& name) {
  if (name == "none") return Window::None;
  if (name == "hann") return Window::Hann;
  throw ConfigError("psd.window must be none or hann, got '" + name + "'");
}

FieldState make_state(const RunConfig& cfg, const std::string& name) {
  const double mass = cfg.axion().mass_eV;
  const double tol = cfg.number("numerics.quad_abs_tol");
  if (name == "coherent") return CoherentState{cfg.omega_phi_prime()};
  if (name == "shm" || name == "shmpp") {
    return ThermalState(MomentumDistribution(cfg.halo_named(name), mass), tol);
  }
  if (name == "thermal") return ThermalState(MomentumDistribution(cfg.halo(), mass), tol);
  if (name == "spectrum") {
    const auto s = psd_setup(cfg);
    const auto grid = output_psd(s.params, s.inputs, s.omega);
    return TabulatedSpectrumState{grid.omega, grid.S};
  }
  throw ConfigError("unknown coherence state '" + name +
                    "' (shm | shmpp | thermal | coherent | spectrum)");
}

CommandOutput coherence_command(const RunConfig& cfg, bool first_order) {
  const auto names = cfg.list("coherence.states");
  if (names.empty()) throw ConfigError("coherence.states is empty");
  std::vector<LabeledState> states;
  for (const auto& n : names) {
    if (std::any_of(states.begin(), states.end(), [&](const auto& s) { return s.label == n; })) {
      throw ConfigError("coherence.states lists '" + n + "' twice");
    }
    states.push_back({n, make_state(cfg, n)});
  }
  const double omega = cfg.omega_phi_prime();
  const double tau_coh = coherence_time(omega, cfg.number("coherence.Q_a"));
  const auto scaled = linspace(0.0, cfg.number("coherence.tau_max"), cfg.integer("coherence.points"));
  std::vector<double> tau(scaled.size());
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = scaled[i] * tau_coh;
  const int workers = cfg.workers();
  const auto curves = g2_curve(states, tau, workers);
  const long mc = cfg.integer("coherence.mc_samples");
  if (mc < 0) throw ConfigError("coherence.mc_samples must be non-negative");

  std::vector<std::string> header{"tau_s", "tau_over_tau_coh"};
  std::vector<std::vector<double>> columns{tau, scaled};
  Json meta;
  meta["verb"] = first_order ? "g1" : "g2";
  meta["mass_eV"] = cfg.axion().mass_eV;
  meta["omega_phi_prime_rad_s"] = omega;
  meta["tau_coh_s"] = tau_coh;
  meta["Q_a"] = cfg.number("coherence.Q_a");
  meta["halo"] = halo_json(cfg);
  meta["quad_abs_tol"] = cfg.number("numerics.quad_abs_tol");
  meta["seed"] = cfg.seed();
  meta["mc_samples"] = mc;
  Json per_state = Json::array();
  for (std::size_t s = 0; s < curves.size(); ++s) {
    const auto& c = curves[s];
    const std::string& label = c.state_label;
    std::vector<double> re, im, ab;
    for (const auto& z : c.g1) {
      re.push_back(z.real());
      im.push_back(z.imag());
      ab.push_back(std::abs(z));
    }
    if (first_order) {
      header.insert(header.end(), {label + ":re_g1", label + ":im_g1", label + ":abs_g1"});
      columns.insert(columns.end(), {re, im, ab});
    } else {
      header.insert(header.end(), {label + ":abs_g1", label + ":g2"});
      columns.insert(columns.end(), {ab, c.g2});
    }
    const auto* thermal = std::get_if<ThermalState>(&states[s].state);
    if (thermal && mc > 0) {
      const auto est = g1_monte_carlo(*thermal, tau, static_cast<std::uint64_t>(mc),
                                      stream_seed(cfg.seed(), s), workers);
      std::vector<double> mc_abs;
      for (const auto& z : est) mc_abs.push_back(std::abs(z));
      header.push_back(label + ":mc_abs_g1");
      columns.push_back(mc_abs);
    }
    Json js;
    js["label"] = label;
    js["kind"] = state_kind(states[s].state);
    const double g2_0 = c.g2.empty() ? 1.0 : g2(states[s].state, 0.0);
    js["g2_at_zero"] = g2_0;
    js["statistics"] = to_string(classify_statistics(g2_0, 1e-3));
    js["max_abs_g1"] = *std::max_element(ab.begin(), ab.end());
    js["g2_at_tau_max"] = c.g2.back();
    per_state.push_back(js);
  }
  meta["states"] = per_state;
  const auto find = [&](const std::string& l) {
    return std::find_if(curves.begin(), curves.end(),
                        [&](const auto& c) { return c.state_label == l; });
  };
  if (find("shm") != curves.end() && find("shmpp") != curves.end()) {
    const auto& a = find("shm")->g2;
    const auto& b = find("shmpp")->g2;
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    meta["max_abs_g2_shm_minus_shmpp"] = diff;
  }

  CommandOutput out;
  const std::string stem = first_order ? "g1_curves" : "g2_curves";
  out.files.push_back({stem + ".csv", csv(header, columns)});
  out.files.push_back({stem + ".json", json_document(meta)});
  out.summary.push_back({"tau_coh_s", tau_coh});
  out.summary.push_back({curves.front().state_label + ":g2_at_tau_max", curves.front().g2.back()});
  return out;
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"neff", "markov", "lindblad", "psd",
                                          "g1",   "g2",     "counting", "sweep"};
  return v;
}

bool is_verb(const std::string& name) {
  return std::find(verbs().begin(), verbs().end(), name) != verbs().end();
}

CommandOutput cmd_neff(const RunConfig& cfg) {
  const auto axion = cfg.axion();
  const auto dist = cfg.halo();
  const auto ctx = cfg.context();
  const double omega_b = cfg.optional_number("haloscope.omega_b").value_or(cfg.omega_phi_prime());
  const double k_b = k_of_omega(omega_b, axion.mass_eV);
  const double value = n_eff(dist, axion.mass_eV, ctx.rho_DM, omega_b);

  Json j;
  j["n_eff"] = value;
  j["k_b_per_m"] = k_b;
  j["omega_b_rad_s"] = omega_b;
  j["omega_phi_prime_rad_s"] = cfg.omega_phi_prime();
  Json inputs;
  inputs["mass_eV"] = axion.mass_eV;
  inputs["rho_DM_GeV_cm3"] = cfg.number("context.rho_DM_GeV_cm3");
  inputs["halo"] = halo_json(cfg);
  j["inputs"] = inputs;

  CommandOutput out;
  out.files.push_back({"neff.json", json_document(j)});
  out.summary = {{"n_eff", value}, {"k_b_per_m", k_b}};
  return out;
}

CommandOutput cmd_markov(const RunConfig& cfg) {
  const auto axion = cfg.axion();
  MarkovInputs inputs;
  inputs.Q_a = cfg.number("markov.Q_a");
  inputs.v_g = lab_speed(cfg);
  const auto report =
      markov_check(axion, cfg.haloscope(), cfg.context(), inputs, cfg.model_constants());

  Json j;
  j["H_I_bound_rad_s"] = report.H_I_bound;
  j["tau_c_s"] = report.tau_c;
  j["f_a_GeV"] = report.f_a;
  j["g_agg_per_GeV"] = report.g_agg_per_GeV;
  j["mass_eV"] = axion.mass_eV;
  j["f_a_max_GeV"] = report.f_a_max;
  j["margin"] = report.margin;
  j["valid"] = report.valid;
  Json in;
  in["Q_a"] = inputs.Q_a;
  in["B0_T"] = cfg.number("haloscope.B0");
  in["V_prime_m3"] = cfg.number("haloscope.V_prime");
  in["rho_DM_GeV_cm3"] = cfg.number("context.rho_DM_GeV_cm3");
  in["g_gamma"] = *cfg.model_constants().g_gamma;
  in["mass_fa_constant_eV_GeV"] = cfg.number("axion.mass_fa_constant");
  j["inputs"] = in;

  CommandOutput out;
  out.files.push_back({"markov.json", json_document(j)});
  out.summary = {{"margin", report.margin},
                 {"f_a_max_GeV", report.f_a_max},
                 {"valid", report.valid ? 1.0 : 0.0}};
  return out;
}

CommandOutput cmd_lindblad(const RunConfig& cfg) {
  LindbladParams p;
  p.gamma = cfg.number("lindblad.gamma");
  p.n_eff = cfg.number("lindblad.n_eff");
  p.env_kappa = cfg.number("lindblad.env_kappa");
  p.env_nth = cfg.number("lindblad.env_nth");
  p.rotating_frame = cfg.boolean("lindblad.rotating_frame");
  p.omega_b = cfg.number("lindblad.omega_b");
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[lindblad] ") + e.what());
  }
  const long n_max = cfg.integer("lindblad.N_max");
  if (n_max < 1 || n_max > 2000) throw ConfigError("lindblad.N_max must lie in [1, 2000]");
  const std::string initial = cfg.string("lindblad.initial");
  const double initial_n = cfg.number("lindblad.initial_n");
  DensityMatrix rho0;
  if (initial == "vacuum") {
    rho0 = DensityMatrix::vacuum(static_cast<int>(n_max));
  } else if (initial == "fock") {
    if (initial_n != std::floor(initial_n)) throw ConfigError("lindblad.initial_n must be a Fock level");
    rho0 = DensityMatrix::fock(static_cast<int>(n_max), static_cast<int>(initial_n));
  } else if (initial == "thermal") {
    rho0 = DensityMatrix::thermal(static_cast<int>(n_max), initial_n);
  } else {
    throw ConfigError("lindblad.initial must be vacuum, fock or thermal");
  }
  const std::string policy = cfg.string("lindblad.truncation");
  if (policy != "error" && policy != "warn") throw ConfigError("lindblad.truncation must be error or warn");
  EvolveOptions opts;
  opts.truncation = policy == "warn" ? TruncationPolicy::Warn : TruncationPolicy::Error;
  opts.samples = static_cast<int>(cfg.integer("lindblad.samples"));
  if (opts.samples < 2) throw ConfigError("lindblad.samples must be at least 2");

  const double T = cfg.number("lindblad.T");
  const auto result = evolve(rho0, p, T, cfg.number("lindblad.dt"), opts);

  std::vector<double> t, mean, trace, top;
  for (const auto& row : result.trajectory) {
    t.push_back(row.t);
    mean.push_back(row.mean_n);
    trace.push_back(row.trace_error);
    top.push_back(row.max_level_population);
  }
  const double n0 = rho0.mean_n();
  const double closed = analytic_moments(p, T, n0);
  const double mean_T = result.rho.mean_n();
  // a thermal start stays thermal under a thermal bath; compare populations
  // with Bose-Einstein at the closed-form mean
  const auto pops = result.rho.populations();
  Json j;
  j["steps"] = result.steps;
  j["step_s"] = result.step;
  j["mean_n_T"] = mean_T;
  j["closed_form_mean_n_T"] = closed;
  j["relative_error"] = closed != 0.0 ? std::abs(mean_T - closed) / std::abs(closed)
                                      : std::abs(mean_T - closed);
  if (initial != "fock") {
    const auto be = DensityMatrix::thermal(static_cast<int>(n_max), closed).populations();
    double dev = 0.0;
    for (std::size_t i = 0; i < pops.size(); ++i) dev = std::max(dev, std::abs(pops[i] - be[i]));
    j["max_population_deviation_from_bose_einstein"] = dev;
  }
  j["trace_error_T"] = result.rho.trace_error();
  j["hermiticity_error_T"] = result.rho.hermiticity_error();
  j["min_eigenvalue_T"] = result.rho.min_eigenvalue();
  j["max_level_population"] = result.max_level_population;
  j["truncation_warning"] = result.truncation_warning;
  j["populations_T"] = pops;
  Json in;
  in["gamma_rad_s"] = p.gamma;
  in["n_eff"] = p.n_eff;
  in["env_kappa_rad_s"] = p.env_kappa;
  in["env_nth"] = p.env_nth;
  in["rotating_frame"] = p.rotating_frame;
  in["N_max"] = n_max;
  in["T_s"] = T;
  in["initial"] = initial;
  j["inputs"] = in;

  CommandOutput out;
  out.files.push_back({"trajectory.csv",
                       csv({"t_s", "mean_n", "trace_error", "max_level_population"},
                           {t, mean, trace, top})});
  out.files.push_back({"lindblad.json", json_document(j)});
  out.summary = {{"mean_n_T", mean_T}, {"closed_form_mean_n_T", closed}};
  if (result.truncation_warning) {
    out.warnings.push_back("Fock truncation saturated (top-level population " +
                           format_double(result.max_level_population) + ")");
  }
  return out;
}

CommandOutput cmd_psd(const RunConfig& cfg) {
  const auto s = psd_setup(cfg);
  const auto grid = output_psd(s.params, s.inputs, s.omega);
  const auto window = parse_window(cfg.string("psd.window"));

  Json j;
  j["omega_b_rad_s"] = s.params.omega_b;
  j["kappa_c_rad_s"] = s.params.kappa_c;
  j["omega_phi_prime_rad_s"] = s.params.omega_phi_prime;
  j["Q_a"] = s.params.Q_a;
  j["kappa_a_rad_s"] = s.params.kappa_a();
  j["g2c_rad_s"] = s.params.g2c;
  j["small_coupling"] = grid.small_coupling;
  j["n_th"] = cfg.number("psd.n_th");
  j["n_a"] = cfg.number("psd.n_a");
  if (const auto t = cfg.optional_string("psd.input_table")) j["input_table"] = *t;
  j["points"] = grid.omega.size();
  j["mean_occupation"] = mean_occupation(grid);
  for (auto [mode, key] : {std::pair{Mode::Cavity, "fwhm_cavity_rad_s"},
                           std::pair{Mode::Axion, "fwhm_axion_rad_s"}}) {
    try {
      j[key] = feature_fwhm(grid, mode);
    } catch (const ResolutionError& e) {
      j[key] = nullptr;
      j[std::string(key) + "_note"] = e.what();
    }
  }
  const auto g1t = g1_time_domain(grid, window);
  j["window"] = cfg.string("psd.window");
  j["G1_tau0"] = g1t.G1[g1t.G1.size() / 2].real();

  CommandOutput out;
  out.files.push_back({"psd.csv", csv({"omega_rad_s", "S", "S_cavity", "S_axion"},
                                      {grid.omega, grid.S, grid.S_cavity, grid.S_axion})});
  std::vector<double> re, im;
  for (const auto& z : g1t.G1) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  out.files.push_back({"psd_g1.csv", csv({"tau_s", "re_G1", "im_G1"}, {g1t.tau, re, im})});
  out.files.push_back({"psd.json", json_document(j)});
  out.summary = {{"mean_occupation", mean_occupation(grid)}};
  if (!grid.small_coupling) {
    out.warnings.push_back("two-cavity coupling outside the small-coupling regime "
                           "(g2c^2 >= 0.01 kappa_a kappa_c)");
  }
  return out;
}

CommandOutput cmd_g1(const RunConfig& cfg) { return coherence_command(cfg, true); }
CommandOutput cmd_g2(const RunConfig& cfg) { return coherence_command(cfg, false); }

CommandOutput cmd_counting(const RunConfig& cfg) {
  const auto axion = cfg.axion();
  const auto hs = cfg.haloscope();
  const auto ctx = cfg.context();
  const double omega_a = cfg.omega_phi_prime();
  const double Q_a = cfg.number("counting.Q_a");
  const double required = cfg.number("counting.hierarchy_ratio");
  const double delta_omega_a = omega_a / Q_a;
  const auto window = delta_t_window(omega_a, delta_omega_a, hs.kappa_c, required);

  CountingSetup setup;
  setup.omega_a = omega_a;
  setup.delta_omega_a = delta_omega_a;
  setup.delta_omega_b = hs.kappa_c;
  setup.g_coupling = coupling_g(axion, hs);
  setup.H_omega_a =
      cfg.optional_number("counting.H_omega_a").value_or(cavity_filter(omega_a, hs.omega_b, hs.kappa_c));
  if (const auto dt = cfg.optional_number("counting.delta_t")) {
    setup.delta_t = *dt;
  } else {
    if (!window.satisfiable()) {
      throw ValidityError("no delta_t satisfies the time-scale hierarchy at ratio " +
                          format_double(required) + ": need delta_t >= " +
                          format_double(window.lower) + " s and <= " + format_double(window.upper) +
                          " s (raise Q_a / Q_c or lower counting.hierarchy_ratio)");
    }
    setup.delta_t = std::sqrt(window.lower * window.upper);
  }

  const std::string state_name = cfg.string("counting.state");
  FieldState state = CoherentState{omega_a};
  if (state_name == "thermal") {
    state = ThermalState(MomentumDistribution(cfg.halo(), axion.mass_eV),
                         cfg.number("numerics.quad_abs_tol"));
  } else if (state_name != "coherent") {
    throw ConfigError("counting.state must be thermal or coherent");
  }
  const double G1_0 = field_intensity(ctx, axion.mass_eV, mean_inverse_omega(cfg.halo(), axion.mass_eV));
  const auto single = count_prob_single(G1_0, setup, required);

  const double tau_coh = coherence_time(omega_a, Q_a);
  const double tau_hi = std::max(setup.delta_t, cfg.number("counting.tau_max") * tau_coh);
  const auto taus = linspace(setup.delta_t, tau_hi, cfg.integer("counting.points"));
  Json joint = Json::array();
  double worst = 0.0;
  for (double tau : taus) {
    const double g2v = g2(state, tau);
    const auto pj = count_prob_joint(G1_0 * G1_0 * g2v, setup, setup, 0.0, tau, required);
    const double ratio = counting_ratio(pj.probability, single.probability);
    const double err = std::abs(ratio - g2v) / g2v;
    worst = std::max(worst, err);
    Json row;
    row["tau_s"] = tau;
    row["P_joint"] = pj.probability;
    row["ratio"] = ratio;
    row["g2"] = g2v;
    row["identity_relative_error"] = err;
    joint.push_back(row);
  }

  Json j;
  j["state"] = state_name;
  j["P_single"] = single.probability;
  j["G1_0_J_per_m"] = G1_0;
  j["g_coupling"] = setup.g_coupling;
  j["H_omega_a_s"] = setup.H_omega_a;
  j["delta_t_s"] = setup.delta_t;
  j["omega_a_rad_s"] = omega_a;
  j["delta_omega_a_rad_s"] = delta_omega_a;
  j["delta_omega_b_rad_s"] = hs.kappa_c;
  j["g2_at_zero"] = g2(state, 0.0);
  j["statistics"] = to_string(classify_statistics(g2(state, 0.0), 1e-3));
  Json v;
  v["required_ratio"] = required;
  v["carrier_ratio"] = single.validity.carrier_ratio;
  v["bandwidth_ratio"] = single.validity.bandwidth_ratio;
  v["detector_ratio"] = single.validity.detector_ratio;
  v["delta_t_window_s"] = Json::array({window.lower, window.upper});
  v["satisfied"] = single.validity.satisfied;
  j["validity"] = v;
  j["joint"] = joint;
  j["max_identity_relative_error"] = worst;

  CommandOutput out;
  out.files.push_back({"counting.json", json_document(j)});
  out.summary = {{"P_single", single.probability}, {"delta_t_s", setup.delta_t}};
  return out;
}

std::string manifest_json(const std::string& verb, const RunConfig& cfg,
                          const std::vector<OutputFile>& files, double wall_time_s) {
  Json m;
  m["tool"] = "ubdm";
  m["version"] = UBDM_VERSION;
  m["verb"] = verb;
  m["seed"] = cfg.seed();
  Json config;
  for (const auto& [key, entry] : cfg.entries()) {
    config[key] = {{"value", entry.value}, {"source", entry.source}};
  }
  m["config"] = config;
  Json outputs = Json::array();
  for (const auto& f : files) {
    const auto slash = f.name.rfind('/');
    const std::string base = slash == std::string::npos ? f.name : f.name.substr(slash + 1);
    if (base == kManifestName) continue;
    outputs.push_back({{"file", f.name}, {"bytes", f.content.size()},
                       {"fnv1a64", hex64(fnv1a64(f.content))}});
  }
  m["outputs"] = outputs;
  m["wall_time_s"] = wall_time_s;
  return m.dump(2) + "\n";
}

CommandOutput cmd_sweep(const RunConfig& cfg) {
  const std::string verb = cfg.string("sweep.command");
  if (!is_verb(verb) || verb == "sweep") throw UsageError("sweep.command must name a verb other than sweep");
  const std::string axis = cfg.string("sweep.axis");
  const KeySpec* spec = find_key(axis);
  if (!spec) throw UsageError("sweep axis '" + axis + "' is not a configuration key");
  if (spec->type != ValueType::Number && spec->type != ValueType::Integer) {
    throw UsageError("sweep axis '" + axis + "' is not numeric");
  }
  const auto raw_values = cfg.has("sweep.values") ? cfg.list("sweep.values") : std::vector<std::string>{};
  if (raw_values.empty()) throw UsageError("sweep.values is empty");

  std::vector<RunConfig> points;
  for (const auto& v : raw_values) {
    RunConfig point = cfg;
    try {
      point.set(axis, v, "--set");
    } catch (const ConfigError& e) {
      throw UsageError(std::string("sweep value rejected: ") + e.what());
    }
    points.push_back(std::move(point));
  }

  std::vector<CommandOutput> results(points.size());
  std::vector<double> wall(points.size());
  parallel_for(points.size(), cfg.workers(), [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    results[i] = run_command(verb, points[i]);
    wall[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });

  CommandOutput out;
  std::vector<std::string> header{"index", "value"};
  std::vector<std::vector<double>> columns(2);
  for (const auto& [name, value] : results.front().summary) {
    header.push_back(name);
    columns.emplace_back();
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    char dir[32];
    std::snprintf(dir, sizeof dir, "point_%03zu/", i);
    for (const auto& f : results[i].files) out.files.push_back({dir + f.name, f.content});
    out.files.push_back({std::string(dir) + std::string(kManifestName),
                         manifest_json(verb, points[i], results[i].files, wall[i])});
    columns[0].push_back(static_cast<double>(i));
    columns[1].push_back(points[i].number(axis));
    for (std::size_t k = 0; k < results[i].summary.size(); ++k) {
      columns[2 + k].push_back(results[i].summary[k].second);
    }
    for (const auto& w : results[i].warnings) out.warnings.push_back(dir + (": " + w));
  }
  out.files.push_back({"summary.csv", csv(header, columns)});
  return out;
}

CommandOutput run_command(const std::string& verb, const RunConfig& cfg) {
  if (verb == "neff") return cmd_neff(cfg);
  if (verb == "markov") return cmd_markov(cfg);
  if (verb == "lindblad") return cmd_lindblad(cfg);
  if (verb == "psd") return cmd_psd(cfg);
  if (verb == "g1") return cmd_g1(cfg);
  if (verb == "g2") return cmd_g2(cfg);
  if (verb == "counting") return cmd_counting(cfg);
  if (verb == "sweep") return cmd_sweep(cfg);
  throw UsageError("unknown verb '" + verb + "'");
}

}  // namespace ubdm::cli
