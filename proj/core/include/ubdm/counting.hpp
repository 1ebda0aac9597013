#pragma once

// Single and joint photon-counting probabilities for a detector of finite
// resolution time behind a haloscope, valid in the monochromatic regime.

#include <string>

namespace ubdm {

struct CountingSetup {
  double g_coupling = 0.0;     // m^{3/2} s^{-3/2}
  double H_omega_a = 0.0;      // filter response at omega_a, s
  double delta_t = 0.0;        // s
  double omega_a = 0.0;        // rad/s
  double delta_omega_a = 0.0;  // field bandwidth, rad/s
  double delta_omega_b = 0.0;  // detector bandwidth, rad/s
};

//! The three time-scale inequalities with "much less" meaning a factor of
//! at least `required`.
struct HierarchyReport {
  double required = 20.0;
  double carrier_ratio = 0.0;    // delta_t omega_a           (1/omega_a << delta_t)
  double bandwidth_ratio = 0.0;  // 1 / (delta_t delta_omega_a) (delta_t << 1/delta_omega_a)
  double detector_ratio = 0.0;   // delta_t delta_omega_b     (delta_t >> 1/delta_omega_b)
  bool satisfied = false;
  //! Empty when satisfied, otherwise the first failed inequality.
  std::string failed;
};

HierarchyReport check_hierarchy(const CountingSetup& setup, double required = 20.0);

//! Interval of delta_t satisfying all three inequalities; lower > upper when
//! the hierarchy is unsatisfiable.
struct DeltaTWindow {
  double lower;
  double upper;
  bool satisfiable() const { return lower <= upper; }
};
DeltaTWindow delta_t_window(double omega_a, double delta_omega_a, double delta_omega_b,
                            double required = 20.0);

struct CountResult {
  double probability = 0.0;
  HierarchyReport validity;
};

//! P Delta t = 2 pi (g^2 / hbar c^2) H(omega_a) G1(0) Delta t, with G1(0) in
//! J/m. ValidityError naming the failed inequality when the hierarchy fails.
CountResult count_prob_single(double G1_0, const CountingSetup& setup, double required = 20.0);

//! P Delta t^2 = (2 pi)^2 (g^4 / hbar^2 c^4) H(omega_a)^2 G2(t_a - t_b) Delta t^2.
//! Requires identical setups and |t_a - t_b| >= Delta t (DomainError).
CountResult count_prob_joint(double G2_tau, const CountingSetup& setup_a,
                             const CountingSetup& setup_b, double t_a, double t_b,
                             double required = 20.0);

//! Normalized second-order value P_joint / P_single^2, which equals
//! G2 / G1(0)^2 = g2(tau).
double counting_ratio(double P_joint, double P_single);

//! Cavity transfer kappa_c / ((omega - omega_b)^2 + kappa_c^2 / 4), s.
double cavity_filter(double omega, double omega_b, double kappa_c);

}  // namespace ubdm
