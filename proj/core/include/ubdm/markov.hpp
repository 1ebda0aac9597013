#pragma once

// Born-Markov validity check: the interaction strength times the axion
// coherence time must stay below one.

#include "ubdm/field.hpp"

namespace ubdm {

struct MarkovReport {
  double H_I_bound = 0.0;  // rad/s
  double tau_c = 0.0;      // s
  double f_a = 0.0;        // GeV, the point that was checked
  double g_agg_per_GeV = 0.0;
  double f_a_max = 0.0;    // GeV
  double margin = 0.0;     // (H_I_bound tau_c)^2
  bool valid = false;
};

struct MarkovInputs {
  double Q_a = 1e6;
  //! Lab speed entering omega_phi' = omega_c (1 + v_g^2 / 2c^2).
  double v_g = 232e3;
};

//! |H_I| = 2 g_agg B0 sqrt(V' n) / pi in natural units, with n = rho_DM / m.
//! Uses axion.g_agg_per_GeV when positive, otherwise g_agg from f_a. The
//! threshold f_a_max varies m and g_agg together through m f_a = K and
//! g_agg = alpha g_gamma / (pi f_a); ConfigError when g_gamma is unset.
MarkovReport markov_check(const AxionParams& axion, const HaloscopeParams& halo,
                          const FieldQuantizationContext& ctx, const MarkovInputs& inputs = {},
                          const AxionModelConstants& constants = {});

//! margin(f_a) along the m f_a = K, g_agg ~ 1/f_a line.
double markov_margin_at(double f_a_GeV, const HaloscopeParams& halo,
                        const FieldQuantizationContext& ctx, const MarkovInputs& inputs,
                        const AxionModelConstants& constants);

//! |H_I| in rad/s for explicit (g_agg, m).
double interaction_bound(double g_agg_per_GeV, double mass_eV, const HaloscopeParams& halo,
                         const FieldQuantizationContext& ctx);

}  // namespace ubdm
