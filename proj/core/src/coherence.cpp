#include "ubdm/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ubdm/errors.hpp"
#include "ubdm/parallel.hpp"

namespace ubdm {

namespace {

using cd = std::complex<double>;

// omega(v) - omega_c without cancellation
double detuning(double omega_c, double v) {
  const double b2 = (v / kPhys.c) * (v / kPhys.c);
  return omega_c * b2 / (std::sqrt(1.0 + b2) + 1.0);
}

double inverse_gamma(double v) {
  const double b = v / kPhys.c;
  return 1.0 / std::sqrt(1.0 + b * b);
}

quad::Options envelope_options(double abs_tol, double phase_span) {
  quad::Options opts;
  opts.abs_tol = abs_tol;
  opts.rel_tol = 1e-12;
  opts.max_intervals = 50000;
  opts.initial_panels = std::clamp(static_cast<int>(std::ceil(phase_span / kPi)), 8, 20000);
  return opts;
}

cd thermal_g1(const ThermalState& s, double tau) {
  if (tau == 0.0) return {1.0, 0.0};
  const auto& velocity = s.distribution().velocity();
  const double omega_c = s.compton_frequency();
  const double norm = s.norm();
  auto integrand = [&](double v) {
    const double weight = velocity.speed_marginal(v) * inverse_gamma(v) / norm;
    return std::polar(weight, -detuning(omega_c, v) * tau);
  };
  const auto opts = envelope_options(s.abs_tol(), s.max_detuning() * std::abs(tau));
  cd envelope;
  try {
    envelope = quad::integrate(integrand, 0.0, velocity.escape_speed(), opts).value;
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("thermal g1 envelope at tau = ") + std::to_string(tau) +
                         " s: " + e.what());
  }
  return std::polar(1.0, -omega_c * tau) * envelope;
}

cd tabulated_g1(const TabulatedSpectrumState& s, double tau) {
  const std::size_t n = s.omega.size();
  if (n < 2 || s.S.size() != n) throw UsageError("tabulated spectrum state needs a grid");
  if (tau == 0.0) return {1.0, 0.0};
  const double w0 = s.omega.front();
  cd total = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = 0.5 * (s.omega[i + 1] - s.omega[i]);
    total += h * (s.S[i] * std::polar(1.0, -(s.omega[i] - w0) * tau) +
                  s.S[i + 1] * std::polar(1.0, -(s.omega[i + 1] - w0) * tau));
    norm += h * (s.S[i] + s.S[i + 1]);
  }
  if (!(norm > 0.0)) throw DomainError("tabulated spectrum state carries no power");
  return std::polar(1.0, -w0 * tau) * (total / norm);
}

}  // namespace

ThermalState::ThermalState(const MomentumDistribution& dist, double abs_tol)
    : dist_(dist), omega_c_(ubdm::compton_frequency(dist.mass_eV())), abs_tol_(abs_tol) {
  if (!(abs_tol > 0.0)) throw DomainError("envelope tolerance must be positive");
  const auto& velocity = dist_.velocity();
  quad::Options opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-13;
  opts.initial_panels = 8;
  norm_ = quad::integrate([&](double v) { return velocity.speed_marginal(v) * inverse_gamma(v); },
                          0.0, velocity.escape_speed(), opts)
              .value;
  if (!(norm_ > 0.0)) throw DomainError("thermal state has an empty distribution");
  max_detuning_ = detuning(omega_c_, velocity.escape_speed());
}

std::string_view state_kind(const FieldState& state) {
  switch (state.index()) {
    case 0: return "coherent";
    case 1: return "thermal";
    default: return "tabulated";
  }
}

std::complex<double> g1(const FieldState& state, double tau) {
  if (const auto* c = std::get_if<CoherentState>(&state)) {
    return std::polar(1.0, -c->omega * tau);
  }
  if (const auto* t = std::get_if<ThermalState>(&state)) return thermal_g1(*t, tau);
  return tabulated_g1(std::get<TabulatedSpectrumState>(state), tau);
}

double g2(const FieldState& state, double tau) {
  if (std::holds_alternative<CoherentState>(state)) return 1.0;
  return 1.0 + std::norm(g1(state, tau));
}

std::vector<CoherenceCurve> g2_curve(const std::vector<LabeledState>& states,
                                     const std::vector<double>& tau_grid, int workers) {
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] >= 0.0)) throw DomainError("tau grid must be non-negative");
    if (i > 0 && !(tau_grid[i] >= tau_grid[i - 1])) throw DomainError("tau grid must be sorted");
  }
  std::vector<CoherenceCurve> curves(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    curves[s].state_label = states[s].label;
    curves[s].tau = tau_grid;
    curves[s].g1.resize(tau_grid.size());
    curves[s].g2.resize(tau_grid.size());
  }
  const std::size_t points = tau_grid.size();
  parallel_for(states.size() * points, workers, [&](std::size_t job) {
    const std::size_t s = job / points;
    const std::size_t i = job % points;
    const auto& state = states[s].state;
    const cd value = g1(state, tau_grid[i]);
    curves[s].g1[i] = value;
    curves[s].g2[i] = std::holds_alternative<CoherentState>(state) ? 1.0 : 1.0 + std::norm(value);
  });
  return curves;
}

std::vector<std::complex<double>> g1_monte_carlo(const ThermalState& state,
                                                 const std::vector<double>& taus,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 int workers) {
  constexpr std::uint64_t kChunk = 1u << 16;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  const auto& velocity = state.distribution().velocity();
  const double omega_c = state.compton_frequency();
  std::vector<std::vector<cd>> sums(chunks, std::vector<cd>(taus.size()));
  std::vector<double> weights(chunks, 0.0);
  parallel_for(static_cast<std::size_t>(chunks), workers, [&](std::size_t c) {
    std::mt19937_64 rng(stream_seed(seed, c));
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    auto& acc = sums[c];
    for (std::uint64_t i = begin; i < end; ++i) {
      const double v = velocity.sample(rng).norm();
      const double w = inverse_gamma(v);
      const double d = detuning(omega_c, v);
      weights[c] += w;
      for (std::size_t j = 0; j < taus.size(); ++j) acc[j] += std::polar(w, -d * taus[j]);
    }
  });
  std::vector<cd> out(taus.size());
  double total = 0.0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    total += weights[c];
    for (std::size_t j = 0; j < taus.size(); ++j) out[j] += sums[c][j];
  }
  if (!(total > 0.0)) throw DomainError("Monte Carlo g1 needs at least one sample");
  for (std::size_t j = 0; j < taus.size(); ++j) {
    out[j] = std::polar(1.0, -omega_c * taus[j]) * (out[j] / total);
  }
  return out;
}

double coherence_time(double omega_phi_prime, double Q_a) {
  if (!(omega_phi_prime > 0.0) || !(Q_a > 0.0)) {
    throw DomainError("coherence time needs positive frequency and Q_a");
  }
  return 2.0 * Q_a / omega_phi_prime;
}

std::string_view to_string(Statistics s) {
  switch (s) {
    case Statistics::Bunched: return "bunched";
    case Statistics::CoherentLike: return "coherent-like";
    case Statistics::Antibunched: return "antibunched";
  }
  return "unknown";
}

Statistics classify_statistics(double g2_at_zero, double tol) {
  if (!(g2_at_zero >= 0.0)) throw DomainError("g2(0) must be non-negative");
  if (!(tol >= 0.0)) throw DomainError("classification tolerance must be non-negative");
  if (g2_at_zero < 1.0 - tol) return Statistics::Antibunched;
  if (g2_at_zero > 1.0 + tol) return Statistics::Bunched;
  return Statistics::CoherentLike;
}

}  // namespace ubdm
