#include "ubdm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "ubdm/constants.hpp"
#include "ubdm/errors.hpp"
#include "ubdm/interpolation.hpp"

namespace ubdm {

namespace {

// the FFTW planner is not reentrant
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

bool TwoCavityParams::small_coupling() const {
  return g2c * g2c < 0.01 * kappa_a() * kappa_c;
}

void TwoCavityParams::validate() const {
  require_positive(omega_b, "omega_b");
  require_positive(kappa_c, "kappa_c");
  require_positive(omega_phi_prime, "omega_phi_prime");
  require_positive(Q_a, "Q_a");
  if (!(g2c >= 0.0)) throw DomainError("two-cavity coupling must be non-negative");
}

InputSpectra InputSpectra::flat(double n_th, double n_a) {
  if (!(n_th >= 0.0) || !(n_a >= 0.0)) throw DomainError("input occupations must be non-negative");
  return {[n_th](double) { return n_th; }, [n_a](double) { return n_a; }};
}

std::function<double(double)> InputSpectra::tabulated(const TwoColumnTable& table) {
  validate_density_table(table, "input spectrum");
  auto interp = std::make_shared<MonotoneCubic>(table.x, table.y);
  return [interp](double w) { return std::max(0.0, (*interp)(w)); };
}

void SpectrumGrid::validate() const {
  if (omega.size() != S.size()) throw UsageError("spectrum grid: omega and S differ in length");
  for (std::size_t i = 1; i < omega.size(); ++i) {
    if (!(omega[i] > omega[i - 1])) throw UsageError("spectrum grid: omega not increasing");
  }
  for (double s : S) {
    if (!(s >= 0.0)) throw DomainError("spectrum grid: negative PSD value");
  }
}

std::complex<double> susceptibility(const TwoCavityParams& params, Mode which, double omega) {
  const double center = which == Mode::Cavity ? params.omega_b : params.omega_phi_prime;
  const double kappa = which == Mode::Cavity ? params.kappa_c : params.kappa_a();
  return 1.0 / std::complex<double>(0.5 * kappa, center - omega);
}

double susceptibility_squared(const TwoCavityParams& params, Mode which, double omega) {
  const double center = which == Mode::Cavity ? params.omega_b : params.omega_phi_prime;
  const double kappa = which == Mode::Cavity ? params.kappa_c : params.kappa_a();
  const double d = center - omega;
  return 1.0 / (d * d + 0.25 * kappa * kappa);
}

SpectrumGrid output_psd(const TwoCavityParams& params, const InputSpectra& inputs,
                        const std::vector<double>& omega) {
  params.validate();
  SpectrumGrid grid;
  grid.omega = omega;
  grid.small_coupling = params.small_coupling();
  const std::size_t n = omega.size();
  grid.S.resize(n);
  grid.S_cavity.resize(n);
  grid.S_axion.resize(n);
  const double ka = params.kappa_a();
  const double coupling = params.g2c * params.g2c * ka;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = omega[i];
    const double chi_b = susceptibility_squared(params, Mode::Cavity, w);
    const double s_bin = inputs.S_bin ? inputs.S_bin(w) : 0.0;
    const double s_ain = inputs.S_ain ? inputs.S_ain(w) : 0.0;
    if (!(s_bin >= 0.0) || !(s_ain >= 0.0)) {
      throw DomainError("input spectra must be non-negative");
    }
    grid.S_cavity[i] = params.kappa_c * chi_b * s_bin;
    grid.S_axion[i] =
        coupling == 0.0 ? 0.0
                        : coupling * chi_b * susceptibility_squared(params, Mode::Axion, w) * s_ain;
    grid.S[i] = grid.S_cavity[i] + grid.S_axion[i];
  }
  return grid;
}

std::vector<double> uniform_grid(double center, double half_span, int points) {
  if (points < 2) throw UsageError("uniform grid needs at least two points");
  require_positive(half_span, "grid half span");
  std::vector<double> omega(points);
  const double step = 2.0 * half_span / (points - 1);
  for (int i = 0; i < points; ++i) omega[i] = (center - half_span) + step * i;
  return omega;
}

double feature_fwhm(const SpectrumGrid& grid, Mode component) {
  const auto& y = component == Mode::Cavity ? grid.S_cavity : grid.S_axion;
  const auto& x = grid.omega;
  if (y.size() != x.size() || x.size() < 3) {
    throw UsageError("feature_fwhm: grid has no such component");
  }
  const auto peak_it = std::max_element(y.begin(), y.end());
  const std::size_t peak = static_cast<std::size_t>(peak_it - y.begin());
  const double half = 0.5 * *peak_it;
  if (!(half > 0.0)) throw ResolutionError("feature_fwhm: component is identically zero");

  std::size_t left = peak;
  while (left > 0 && y[left - 1] >= half) --left;
  std::size_t right = peak;
  while (right + 1 < y.size() && y[right + 1] >= half) ++right;
  const std::size_t above = right - left + 1;
  if (above < 10) {
    throw ResolutionError("feature_fwhm: only " + std::to_string(above) +
                          " grid points across the feature, need at least 10");
  }
  if (left == 0 || right + 1 == y.size()) {
    throw ResolutionError("feature_fwhm: half-maximum crossing lies outside the grid");
  }
  auto crossing = [&](std::size_t below, std::size_t inside) {
    const double t = (half - y[below]) / (y[inside] - y[below]);
    return x[below] + t * (x[inside] - x[below]);
  };
  return crossing(right + 1, right) - crossing(left - 1, left);
}

double mean_occupation(const SpectrumGrid& grid) {
  const std::size_t n = grid.omega.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    total += 0.5 * (grid.S[i] + grid.S[i + 1]) * (grid.omega[i + 1] - grid.omega[i]);
  }
  return total / kTwoPi;
}

TimeCorrelation g1_time_domain(const SpectrumGrid& grid, Window window) {
  const std::size_t n = grid.omega.size();
  if (n < 2 || grid.S.size() != n) throw UsageError("g1_time_domain: need a populated grid");
  const double w0 = grid.omega.front();
  const double dw = (grid.omega.back() - w0) / static_cast<double>(n - 1);
  const double slack = 1e-6 * dw + 8.0 * std::numeric_limits<double>::epsilon() *
                                       std::max(std::abs(w0), std::abs(grid.omega.back()));
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((grid.omega[i] - grid.omega[i - 1]) - dw) > slack) {
      throw UsageError("g1_time_domain: omega grid is not uniform");
    }
  }

  std::vector<double> in(n);
  for (std::size_t j = 0; j < n; ++j) {
    double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    if (window == Window::Hann) {
      w *= 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(n - 1)));
    }
    in[j] = w * grid.S[j] * dw / kTwoPi;
  }
  const std::size_t bins = n / 2 + 1;
  std::vector<std::complex<double>> out(bins);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  const long half = static_cast<long>(n / 2);
  TimeCorrelation result;
  result.tau.resize(2 * half + 1);
  result.G1.resize(2 * half + 1);
  const double base = kTwoPi / (static_cast<double>(n) * dw);
  for (long k = 0; k <= half; ++k) {
    const double tau = base * static_cast<double>(k);
    const std::complex<double> value = std::polar(1.0, -w0 * tau) * out[k];
    result.tau[half + k] = tau;
    result.G1[half + k] = value;
    result.tau[half - k] = -tau;
    result.G1[half - k] = std::conj(value);
  }
  result.G1[half] = std::complex<double>(out[0].real(), 0.0);
  return result;
}

double effective_two_cavity_coupling(double gamma, double kappa_a) {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be non-negative");
  require_positive(kappa_a, "kappa_a");
  return 0.5 * std::sqrt(gamma * kappa_a);
}

}  // namespace ubdm
