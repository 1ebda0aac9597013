#pragma once

// Galactic halo velocity distributions in the laboratory frame, their speed
// marginals, the momentum-space view f(k), and the occupation integrals that
// feed the Lindblad and coherence modules.

#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "ubdm/field.hpp"

namespace ubdm {

enum class HaloModel { SHM, SHMpp, Tabulated };

std::string_view to_string(HaloModel model);

//! Boosted Maxwell-Boltzmann with a hard cutoff on the lab-frame speed:
//! f(v) ~ exp(-|v - v_g|^2 / 2 v_v^2) Theta(v_esc - |v|).
struct ShmParams {
  Vec3 v_g{0.0, 0.0, 232e3};  // m/s
  double v_esc = 544e3;       // m/s
  double v_v = 1e-3 * kPhys.c;
};

//! Round isothermal component plus an anisotropic "Sausage" Gaussian with
//! fraction eta. Sausage dispersions are (radial, theta, phi) along the lab
//! (x, y, z) axes; the default v_g points along z (the rotation direction).
struct ShmPlusPlusParams {
  Vec3 v_g{0.0, 0.0, 232e3};
  double v_esc = 544e3;
  double v_v = 1e-3 * kPhys.c;
  double eta = 0.2;
  double beta = 0.9;
  //! Explicit (sigma_r, sigma_theta, sigma_phi); derived from beta when unset.
  std::optional<Vec3> sausage_sigma;

  //! sigma_r^2 = 3 v0^2 / (2 (3 - 2 beta)), sigma_theta^2 = sigma_phi^2 =
  //! (1 - beta) sigma_r^2, with v0^2 = 2 v_v^2.
  Vec3 sausage_dispersion() const;
};

//! Velocity distribution f(v), normalized so that the integral over d^3v is 1.
//! Immutable; copies share the cached normalization.
class VelocityDistribution {
 public:
  static VelocityDistribution shm(const ShmParams& params = {});
  static VelocityDistribution shm_plus_plus(const ShmPlusPlusParams& params = {});
  //! Isotropic distribution from a sampled speed density F(v) (any
  //! normalization), monotone-cubic interpolated and zero beyond the table.
  static VelocityDistribution tabulated(std::vector<double> speed,
                                        std::vector<double> density);
  static VelocityDistribution load_table(const std::filesystem::path& path);

  HaloModel model() const;
  //! Lab velocity v_g (zero for tabulated distributions).
  const Vec3& lab_velocity() const;
  double escape_speed() const;

  //! f(v) in s^3/m^3; exactly zero for |v| > v_esc.
  double density(const Vec3& v) const;
  //! Solid-angle integral of f at fixed speed, s^3/m^3.
  double angular_integral(double speed) const;
  //! F(v) = v^2 * angular_integral(v), in s/m; integrates to one over [0, v_esc].
  double speed_marginal(double speed) const;

  //! Draw one lab-frame velocity.
  Vec3 sample(std::mt19937_64& rng) const;

  struct Impl;

 private:
  explicit VelocityDistribution(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

//! f(k) = f_v(hbar k / m) (hbar/m)^3 under the non-relativistic map k = m v / hbar.
class MomentumDistribution {
 public:
  MomentumDistribution(VelocityDistribution velocity, double mass_eV);

  const VelocityDistribution& velocity() const { return velocity_; }
  double mass_eV() const { return mass_eV_; }
  //! hbar / m in m^2/s.
  double hbar_over_m() const { return hbar_over_m_; }
  double speed_of(double k) const { return hbar_over_m_ * k; }
  double k_max() const { return velocity_.escape_speed() / hbar_over_m_; }

  //! 3D density in m^3.
  double density(const Vec3& k) const;
  //! Solid-angle integral of f(k) at |k| = k, in m^3.
  double angular_integral(double k) const;
  //! 1D density over |k|, in m.
  double radial_density(double k) const;

 private:
  VelocityDistribution velocity_;
  double mass_eV_;
  double hbar_over_m_;
};

double eval_f_v(const VelocityDistribution& dist, const Vec3& v);
double speed_marginal(const VelocityDistribution& dist, double speed);
double momentum_density(const MomentumDistribution& dist, const Vec3& k);
double radial_momentum_density(const MomentumDistribution& dist, double k);

//! n_eff = (2 pi)^2 rho_DM / (2 m c^2) * integral dOmega f(k_b, Omega), with
//! k_b the resonant wavenumber of omega_b. rho_DM in J/m^3.
double n_eff(const VelocityDistribution& dist, double mass_eV, double rho_DM,
             double omega_b);

//! <1/omega_k>_f in s/rad.
double mean_inverse_omega(const VelocityDistribution& dist, double mass_eV);

}  // namespace ubdm
