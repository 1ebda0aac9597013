#pragma once

// Normalized first- and second-order coherence of the field at a fixed point
// for coherent, multimode thermal (halo) and tabulated-spectrum states.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ubdm/halo.hpp"
#include "ubdm/quadrature.hpp"

namespace ubdm {

struct CoherentState {
  double omega = 0.0;  // carrier, rad/s
};

//! Multimode thermal state with mode occupations following f(k).
class ThermalState {
 public:
  explicit ThermalState(const MomentumDistribution& dist, double abs_tol = 1e-9);

  const MomentumDistribution& distribution() const { return dist_; }
  double compton_frequency() const { return omega_c_; }
  double abs_tol() const { return abs_tol_; }
  //! int F(v) omega_c / omega(v) dv, the tau = 0 envelope.
  double norm() const { return norm_; }
  //! Largest detuning omega(v_esc) - omega_c.
  double max_detuning() const { return max_detuning_; }

 private:
  MomentumDistribution dist_;
  double omega_c_;
  double abs_tol_;
  double norm_;
  double max_detuning_;
};

//! Field with a given occupation density S(omega) on a grid, assumed
//! chaotic (Gaussian) so that g2 = 1 + |g1|^2.
struct TabulatedSpectrumState {
  std::vector<double> omega;
  std::vector<double> S;
};

using FieldState = std::variant<CoherentState, ThermalState, TabulatedSpectrumState>;

std::string_view state_kind(const FieldState& state);

//! g1(tau). Thermal: e^{-i w_c tau} Env(tau) / Env(0) with
//! Env(tau) = int F(v) (w_c / w(v)) e^{-i dw(v) tau} dv. Exactly 1 at tau = 0.
std::complex<double> g1(const FieldState& state, double tau);

//! Coherent: 1. Otherwise 1 + |g1|^2.
double g2(const FieldState& state, double tau);

struct LabeledState {
  std::string label;
  FieldState state;
};

struct CoherenceCurve {
  std::string state_label;
  std::vector<double> tau;
  std::vector<std::complex<double>> g1;
  std::vector<double> g2;
};

//! One curve per state; tau_grid sorted and non-negative. Points are
//! evaluated on up to `workers` threads with identical results for any count.
std::vector<CoherenceCurve> g2_curve(const std::vector<LabeledState>& states,
                                     const std::vector<double>& tau_grid, int workers = 1);

//! Monte Carlo estimate of the thermal g1 at each lag from `samples` draws
//! of f(v), weighted by omega_c / omega(v). Draws are split into fixed
//! chunks with independent seeded streams, so the result depends on
//! (seed, samples) only and not on `workers`.
std::vector<std::complex<double>> g1_monte_carlo(const ThermalState& state,
                                                 const std::vector<double>& taus,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 int workers = 1);

//! tau_coh = 2 Q_a / omega_phi'.
double coherence_time(double omega_phi_prime, double Q_a);

enum class Statistics { Bunched, CoherentLike, Antibunched };

std::string_view to_string(Statistics s);
Statistics classify_statistics(double g2_at_zero, double tol);
inline bool is_nonclassical(Statistics s) { return s == Statistics::Antibunched; }

}  // namespace ubdm
