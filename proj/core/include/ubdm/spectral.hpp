#pragma once

// Two-cavity input-output model: the haloscope mode b driven by its own input
// noise and, through a weak coupling, by an "axion cavity" mode a whose width
// is the axion linewidth.

#include <complex>
#include <functional>
#include <vector>

#include "ubdm/table.hpp"

namespace ubdm {

struct TwoCavityParams {
  double omega_b = 0.0;          // rad/s
  double kappa_c = 0.0;          // rad/s
  double omega_phi_prime = 0.0;  // rad/s
  double Q_a = 1e6;
  double g2c = 0.0;              // rad/s

  double kappa_a() const { return omega_phi_prime / Q_a; }
  //! g2c^2 < 0.01 kappa_a kappa_c
  bool small_coupling() const;
  void validate() const;
};

enum class Mode { Cavity, Axion };

//! Occupation densities of the two input fields as functions of omega.
struct InputSpectra {
  std::function<double(double)> S_bin;
  std::function<double(double)> S_ain;

  static InputSpectra flat(double n_th, double n_a);
  //! Monotone-cubic interpolation of a two-column (omega, S) table, zero
  //! outside it.
  static std::function<double(double)> tabulated(const TwoColumnTable& table);
};

struct SpectrumGrid {
  std::vector<double> omega;
  std::vector<double> S;
  //! Haloscope-noise and axion contributions; S = S_cavity + S_axion.
  std::vector<double> S_cavity;
  std::vector<double> S_axion;
  bool small_coupling = true;

  void validate() const;
};

//! chi(omega) = 1 / (i (omega_0 - omega) + kappa / 2), in s.
std::complex<double> susceptibility(const TwoCavityParams& params, Mode which, double omega);
//! |chi|^2 without forming the complex value.
double susceptibility_squared(const TwoCavityParams& params, Mode which, double omega);

//! S_bb = kappa_c |chi_b|^2 S_bin + g2c^2 kappa_a |chi_b|^2 |chi_a|^2 S_ain.
SpectrumGrid output_psd(const TwoCavityParams& params, const InputSpectra& inputs,
                        const std::vector<double>& omega);

std::vector<double> uniform_grid(double center, double half_span, int points);

//! FWHM of one component, measured on the grid with linear interpolation of
//! the half-maximum crossings. ResolutionError with fewer than 10 points
//! above half maximum or when a crossing falls off the grid.
double feature_fwhm(const SpectrumGrid& grid, Mode component);

enum class Window { None, Hann };

struct TimeCorrelation {
  std::vector<double> tau;                 // s, symmetric about 0, ascending
  std::vector<std::complex<double>> G1;    // dimensionless occupation
};

//! G1(tau) = int dw/2pi S(w) e^{-i w tau} by trapezoid-weighted FFT on the
//! grid's own uniform spacing: tau_n = 2 pi n / (N dw) for |n| <= N/2.
//! Negative lags are exact conjugates. UsageError on a non-uniform grid.
TimeCorrelation g1_time_domain(const SpectrumGrid& grid, Window window = Window::None);

//! Trapezoid int S dw / 2 pi on the grid.
double mean_occupation(const SpectrumGrid& grid);

//! g2c = sqrt(Gamma kappa_a) / 2, so that 4 g2c^2 / kappa_a = Gamma.
double effective_two_cavity_coupling(double gamma, double kappa_a);

}  // namespace ubdm
