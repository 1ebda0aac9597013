#include "ubdm/field.hpp"

#include <cmath>
#include <string>

#include "ubdm/errors.hpp"

namespace ubdm {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

void AxionParams::validate(const AxionModelConstants& constants) const {
  require_positive(mass_eV, "axion mass_eV");
  if (!(g_agg_per_GeV >= 0.0)) throw DomainError("g_agg must be non-negative");
  if (f_a_GeV) {
    require_positive(*f_a_GeV, "f_a_GeV");
    const double product = mass_eV * *f_a_GeV;
    if (std::abs(product - constants.mass_fa_product) >
        1e-12 * constants.mass_fa_product) {
      throw DomainError("mass_eV * f_a_GeV = " + std::to_string(product) +
                        " does not match the configured constant " +
                        std::to_string(constants.mass_fa_product));
    }
  }
}

MassFaPair mass_fa_convert(std::optional<double> mass_eV,
                           std::optional<double> f_a_GeV,
                           double mass_fa_product) {
  if (mass_eV.has_value() == f_a_GeV.has_value()) {
    throw UsageError("mass_fa_convert: provide exactly one of mass_eV, f_a_GeV");
  }
  require_positive(mass_fa_product, "mass-f_a constant");
  if (mass_eV) {
    require_positive(*mass_eV, "mass_eV");
    return {*mass_eV, mass_fa_product / *mass_eV};
  }
  require_positive(*f_a_GeV, "f_a_GeV");
  return {mass_fa_product / *f_a_GeV, *f_a_GeV};
}

double photon_coupling_from_fa(double f_a_GeV, const AxionModelConstants& constants) {
  if (!constants.g_gamma) {
    throw ConfigError("g_agg-f_a proportionality constant g_gamma is not configured");
  }
  require_positive(f_a_GeV, "f_a_GeV");
  return kPhys.alpha * *constants.g_gamma / (kPi * f_a_GeV);
}

HaloscopeParams HaloscopeParams::from_quality_factor(double omega_b, double V_prime,
                                                     double B0, double Q_c) {
  require_positive(Q_c, "Q_c");
  return {omega_b, V_prime, B0, omega_b / Q_c};
}

void HaloscopeParams::validate() const {
  require_positive(omega_b, "omega_b");
  require_positive(V_prime, "V_prime");
  require_positive(B0, "B0");
  require_positive(kappa_c, "kappa_c");
  if (!(kappa_c < omega_b)) throw DomainError("kappa_c must be below omega_b");
}

FieldQuantizationContext FieldQuantizationContext::from_GeV_per_cm3(double rho_GeV_cm3,
                                                                   double V) {
  require_positive(rho_GeV_cm3, "rho_DM");
  require_positive(V, "quantization volume");
  return {V, rho_GeV_cm3 * kPhys.GeV_per_cm3_to_J_per_m3};
}

double FieldQuantizationContext::particle_number(double mass_eV) const {
  require_positive(mass_eV, "mass_eV");
  return rho_DM * V / eV(mass_eV);
}

double FieldQuantizationContext::number_density(double mass_eV) const {
  return particle_number(mass_eV) / V;
}

double compton_frequency(double mass_eV) {
  require_positive(mass_eV, "mass_eV");
  return eV(mass_eV) / kPhys.hbar;
}

double omega_of_k(double k, double mass_eV) {
  if (!(k >= 0.0)) throw DomainError("omega_of_k: k must be non-negative");
  return std::hypot(compton_frequency(mass_eV), k * kPhys.c);
}

double k_of_omega(double omega, double mass_eV) {
  const double omega_c = compton_frequency(mass_eV);
  if (!(omega >= omega_c)) {
    throw EvanescentModeError("k_of_omega: omega = " + std::to_string(omega) +
                              " rad/s lies below the mass gap " +
                              std::to_string(omega_c) + " rad/s");
  }
  // (w - wc)(w + wc) keeps the small-k branch free of cancellation
  return std::sqrt((omega - omega_c) * (omega + omega_c)) / kPhys.c;
}

double doppler_shifted_frequency(double mass_eV, double v_g_speed) {
  if (!(std::abs(v_g_speed) < kPhys.c)) {
    throw DomainError("doppler_shifted_frequency: |v_g| must be below c");
  }
  const double beta = v_g_speed / kPhys.c;
  return compton_frequency(mass_eV) * (1.0 + 0.5 * beta * beta);
}

double doppler_shifted_frequency(double mass_eV, const Vec3& v_g) {
  return doppler_shifted_frequency(mass_eV, v_g.norm());
}

double coupling_g(const AxionParams& axion, const HaloscopeParams& halo) {
  require_positive(halo.omega_b, "omega_b");
  require_positive(halo.V_prime, "V_prime");
  if (!(halo.B0 >= 0.0)) throw DomainError("B0 must be non-negative");
  if (!(axion.g_agg_per_GeV >= 0.0)) throw DomainError("g_agg must be non-negative");
  const double field_term = halo.B0 / kPhys.mu0;  // A/m
  const double mode_term =
      std::sqrt(kPhys.hbar * halo.omega_b * halo.V_prime * kPhys.c / kPhys.eps0);
  return axion.g_agg_per_J() * field_term * mode_term;
}

double axion_bath_rate(double g, double k_b) {
  if (!(k_b >= 0.0)) throw DomainError("axion_bath_rate: k_b must be non-negative");
  const double ratio = g / kPhys.c;
  return ratio * ratio * k_b / (4.0 * kPi);
}

double field_intensity(const FieldQuantizationContext& ctx, double mass_eV,
                       double mean_inverse_omega) {
  // sum_k c^2 hbar / (2 V w_k) <a_k^+ a_k>, with the mode sum carrying N quanta
  const double quanta = ctx.particle_number(mass_eV);
  const double per_quantum = kPhys.c * kPhys.c * kPhys.hbar / (2.0 * ctx.V);
  return per_quantum * quanta * mean_inverse_omega;
}

}  // namespace ubdm
