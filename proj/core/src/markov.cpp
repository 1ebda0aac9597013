#include "ubdm/markov.hpp"

#include <cmath>

#include "ubdm/errors.hpp"

namespace ubdm {

namespace {

// 1 T expressed in eV^2 (Heaviside-Lorentz, hbar = c = 1)
double tesla_in_eV2() {
  const double hc = natural::kHbarC_eVm;
  return std::sqrt(hc * hc * hc / (kPhys.mu0 * kPhys.eV_to_J));
}

double margin_for(double g_agg_per_GeV, double mass_eV, const HaloscopeParams& halo,
                  const FieldQuantizationContext& ctx, const MarkovInputs& inputs) {
  const double h = interaction_bound(g_agg_per_GeV, mass_eV, halo, ctx);
  const double tau_c = inputs.Q_a / doppler_shifted_frequency(mass_eV, inputs.v_g);
  const double x = h * tau_c;
  return x * x;
}

}  // namespace

double interaction_bound(double g_agg_per_GeV, double mass_eV, const HaloscopeParams& halo,
                         const FieldQuantizationContext& ctx) {
  if (!(halo.B0 > 0.0) || !(halo.V_prime > 0.0)) {
    throw DomainError("markov check needs positive B0 and V'");
  }
  const double g = g_agg_per_GeV * 1e-9;  // 1/eV
  const double b = halo.B0 * tesla_in_eV2();
  const double v = natural::volume(halo.V_prime);
  const double n = natural::number_density(ctx.number_density(mass_eV));
  const double h_eV = 2.0 * g * b * std::sqrt(v * n) / kPi;
  return natural::to_rate(h_eV);
}

double markov_margin_at(double f_a_GeV, const HaloscopeParams& halo,
                        const FieldQuantizationContext& ctx, const MarkovInputs& inputs,
                        const AxionModelConstants& constants) {
  const double g = photon_coupling_from_fa(f_a_GeV, constants);
  const double m = constants.mass_fa_product / f_a_GeV;
  return margin_for(g, m, halo, ctx, inputs);
}

MarkovReport markov_check(const AxionParams& axion, const HaloscopeParams& halo,
                          const FieldQuantizationContext& ctx, const MarkovInputs& inputs,
                          const AxionModelConstants& constants) {
  if (!(inputs.Q_a > 0.0)) throw DomainError("Q_a must be positive");
  if (!constants.g_gamma) {
    throw ConfigError("markov: the g_agg-f_a proportionality constant g_gamma is not configured");
  }
  MarkovReport report;
  report.f_a = axion.f_a_GeV ? *axion.f_a_GeV : constants.mass_fa_product / axion.mass_eV;
  report.g_agg_per_GeV = axion.g_agg_per_GeV > 0.0
                             ? axion.g_agg_per_GeV
                             : photon_coupling_from_fa(report.f_a, constants);
  report.H_I_bound = interaction_bound(report.g_agg_per_GeV, axion.mass_eV, halo, ctx);
  report.tau_c = inputs.Q_a / doppler_shifted_frequency(axion.mass_eV, inputs.v_g);
  const double x = report.H_I_bound * report.tau_c;
  report.margin = x * x;
  report.valid = report.margin < 1.0;

  // bisection in log f_a; the margin grows like f_a along the m f_a = K line
  auto excess = [&](double log_fa) {
    return std::log(markov_margin_at(std::exp(log_fa), halo, ctx, inputs, constants));
  };
  double lo = std::log(1e-10);
  double hi = std::log(1e40);
  if (!(excess(lo) < 0.0 && excess(hi) > 0.0)) {
    throw NumericalError("markov: f_a threshold not bracketed in [1e-10, 1e40] GeV");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  report.f_a_max = std::exp(0.5 * (lo + hi));
  return report;
}

}  // namespace ubdm
