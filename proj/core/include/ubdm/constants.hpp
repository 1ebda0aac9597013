#pragma once

#include <numbers>

namespace ubdm {

//! CODATA 2018 values in SI. Everything inside the library is SI; eV and GeV
//! appear only at API boundaries through the converters below.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;      // J s
  double c = 299792458.0;             // m / s
  double eps0 = 8.8541878128e-12;     // F / m
  double mu0 = 1.25663706212e-6;      // H / m
  double eV_to_J = 1.602176634e-19;   // J / eV
  double alpha = 7.2973525693e-3;     // fine-structure constant
  //! 1 GeV/cm^3 expressed in J/m^3
  double GeV_per_cm3_to_J_per_m3 = 1.602176634e-10 / 1e-6;
};

inline constexpr PhysicalConstants kPhys{};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

//! eV -> J
constexpr double eV(double value) { return value * kPhys.eV_to_J; }
//! GeV -> J
constexpr double GeV(double value) { return value * 1e9 * kPhys.eV_to_J; }

//! Mass in kg of a particle with rest energy mass_eV.
constexpr double mass_kg(double mass_eV) {
  return eV(mass_eV) / (kPhys.c * kPhys.c);
}

namespace natural {
// Conversions into natural (Heaviside-Lorentz, hbar = c = 1) units, in eV.

//! hbar * c in eV m
inline constexpr double kHbarC_eVm = kPhys.hbar * kPhys.c / kPhys.eV_to_J;

//! metres -> 1/eV
constexpr double length(double metres) { return metres / kHbarC_eVm; }
//! m^3 -> 1/eV^3
constexpr double volume(double cubic_metres) {
  return cubic_metres / (kHbarC_eVm * kHbarC_eVm * kHbarC_eVm);
}
//! 1/m^3 -> eV^3
constexpr double number_density(double per_cubic_metre) {
  return per_cubic_metre * kHbarC_eVm * kHbarC_eVm * kHbarC_eVm;
}
//! eV -> rad/s
constexpr double to_rate(double energy_eV) {
  return energy_eV * kPhys.eV_to_J / kPhys.hbar;
}
//! rad/s -> eV
constexpr double from_rate(double omega) {
  return omega * kPhys.hbar / kPhys.eV_to_J;
}

}  // namespace natural
}  // namespace ubdm
