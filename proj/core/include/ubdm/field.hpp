#pragma once

#include <optional>

#include <Eigen/Core>

#include "ubdm/constants.hpp"

namespace ubdm {

using Vec3 = Eigen::Vector3d;

//! Literature constants linking the axion mass, the symmetry-breaking scale
//! f_a and the photon coupling. External inputs, overridable from config.
struct AxionModelConstants {
  //! m_a * f_a, in eV * GeV (5.7 ueV at f_a = 1e12 GeV).
  double mass_fa_product = 5.7e6;
  //! Model-dependent photon coupling coefficient: g_agg = alpha g_gamma / (pi f_a).
  std::optional<double> g_gamma = 0.97;
};

//! Particle-physics inputs for a scalar axion.
struct AxionParams {
  double mass_eV = 1e-5;
  double g_agg_per_GeV = 0.0;
  std::optional<double> f_a_GeV;

  //! Coupling in 1/J.
  double g_agg_per_J() const { return g_agg_per_GeV / GeV(1.0); }

  //! Throws DomainError on m <= 0, g < 0, or an (m, f_a) pair that violates
  //! m * f_a = K within 1e-12.
  void validate(const AxionModelConstants& constants = {}) const;
};

//! Mass and f_a, resolved from exactly one of them.
struct MassFaPair {
  double mass_eV;
  double f_a_GeV;
};

//! Exactly one argument must be set; the other follows from m * f_a = K.
MassFaPair mass_fa_convert(std::optional<double> mass_eV,
                           std::optional<double> f_a_GeV,
                           double mass_fa_product = AxionModelConstants{}.mass_fa_product);

//! g_agg = alpha g_gamma / (pi f_a), in 1/GeV.
double photon_coupling_from_fa(double f_a_GeV, const AxionModelConstants& constants);

//! Haloscope cavity parameters.
struct HaloscopeParams {
  double omega_b = 0.0;   // rad/s
  double V_prime = 0.0;   // m^3
  double B0 = 0.0;        // T
  double kappa_c = 0.0;   // rad/s

  static HaloscopeParams from_quality_factor(double omega_b, double V_prime,
                                             double B0, double Q_c);
  double quality_factor() const { return omega_b / kappa_c; }
  void validate() const;
};

//! Quantization volume and local dark-matter energy density.
//! V is bookkeeping only: exported observables do not depend on it.
struct FieldQuantizationContext {
  double V = 1e63;  // (1e21 m)^3, larger than the galaxy
  double rho_DM = 0.3 * kPhys.GeV_per_cm3_to_J_per_m3;  // J/m^3

  static FieldQuantizationContext from_GeV_per_cm3(double rho_GeV_cm3,
                                                   double V = 1e63);
  //! Number of quanta N = rho V / (m c^2) in the quantization volume.
  double particle_number(double mass_eV) const;
  //! N / V in 1/m^3.
  double number_density(double mass_eV) const;
};

//! omega_c = m c^2 / hbar.
double compton_frequency(double mass_eV);

//! Dispersion relation (hbar w)^2 = (m c^2)^2 + (hbar k c)^2.
double omega_of_k(double k, double mass_eV);

//! Inverse of omega_of_k; throws EvanescentModeError below the mass gap.
double k_of_omega(double omega, double mass_eV);

//! omega_c (1 + |v_g|^2 / 2c^2).
double doppler_shifted_frequency(double mass_eV, const Vec3& v_g);
double doppler_shifted_frequency(double mass_eV, double v_g_speed);

//! g = g_agg (B0/mu0) sqrt(hbar omega_b V' c / eps0), units m^{3/2} s^{-3/2}.
double coupling_g(const AxionParams& axion, const HaloscopeParams& halo);

//! Axion-bath rate Gamma = (g/c)^2 k_b / (4 pi), rad/s.
double axion_bath_rate(double g, double k_b);

//! Unnormalized first-order field correlation G1(0) = <phi(-) phi(+)>
//! for a field of energy density rho_DM with mean inverse mode frequency
//! <1/omega>. Units J/m.
double field_intensity(const FieldQuantizationContext& ctx, double mass_eV,
                       double mean_inverse_omega);

}  // namespace ubdm
