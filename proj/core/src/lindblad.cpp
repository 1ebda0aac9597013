#include "ubdm/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "ubdm/errors.hpp"

namespace ubdm {

namespace {

using cd = std::complex<double>;

void require_non_negative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be non-negative and finite");
  }
}

void require_levels(int n_max) {
  if (n_max < 0) throw UsageError("N_max must be non-negative");
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw UsageError("density matrix must be square and non-empty");
  }
}

DensityMatrix DensityMatrix::vacuum(int n_max) { return fock(n_max, 0); }

DensityMatrix DensityMatrix::fock(int n_max, int n) {
  require_levels(n_max);
  if (n < 0 || n > n_max) throw UsageError("Fock level outside the truncated basis");
  ComplexMatrix m = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  m(n, n) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::thermal(int n_max, double nbar) {
  require_levels(n_max);
  require_non_negative(nbar, "thermal occupation");
  const double ratio = nbar / (nbar + 1.0);
  std::vector<double> p(n_max + 1);
  double w = 1.0;
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    p[n] = w;
    total += w;
    w *= ratio;
  }
  ComplexMatrix m = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) m(n, n) = p[n] / total;
  return DensityMatrix(std::move(m));
}

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> p(dim());
  for (int n = 0; n < dim(); ++n) p[n] = m_(n, n).real();
  return p;
}

double DensityMatrix::mean_n() const {
  double mean = 0.0;
  for (int n = 1; n < dim(); ++n) mean += n * m_(n, n).real();
  return mean;
}

double DensityMatrix::trace_error() const { return std::abs(m_.trace() - cd(1.0, 0.0)); }

double DensityMatrix::hermiticity_error() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const ComplexMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
  if (hermiticity_error() > 1e-12) throw DomainError("density matrix is not Hermitian");
  if (trace_error() > 1e-10) throw DomainError("density matrix trace differs from 1");
  if (min_eigenvalue() < -1e-10) throw DomainError("density matrix is not positive");
}

void LindbladParams::validate() const {
  require_non_negative(gamma, "gamma");
  require_non_negative(n_eff, "n_eff");
  require_non_negative(env_kappa, "env_kappa");
  require_non_negative(env_nth, "env_nth");
  if (!rotating_frame) require_non_negative(omega_b, "omega_b");
}

double LindbladParams::down_rate() const {
  return gamma * (n_eff + 1.0) + env_kappa * (env_nth + 1.0);
}

double LindbladParams::up_rate() const { return gamma * n_eff + env_kappa * env_nth; }

double LindbladParams::equilibrium_occupation() const {
  const double rate = total_rate();
  if (rate == 0.0) return 0.0;
  return up_rate() / rate;
}

void lindblad_rhs(const ComplexMatrix& rho, const LindbladParams& p, ComplexMatrix& out) {
  const Eigen::Index d = rho.rows();
  if (rho.cols() != d || out.rows() != d || out.cols() != d) {
    throw UsageError("lindblad_rhs: dimension mismatch");
  }
  const int top = static_cast<int>(d) - 1;
  const double down = p.down_rate();
  const double up = p.up_rate();
  const double w = p.rotating_frame ? 0.0 : p.omega_b;
  // b b^dagger on the truncated space: n + 1 below the top level, 0 at it
  auto bbdag = [top](int k) { return k < top ? k + 1.0 : 0.0; };

  for (int n = 0; n <= top; ++n) {
    for (int m = 0; m <= top; ++m) {
      cd value = -0.5 * (down * (m + n) + up * (bbdag(m) + bbdag(n))) * rho(m, n);
      if (m < top && n < top) {
        value += down * std::sqrt((m + 1.0) * (n + 1.0)) * rho(m + 1, n + 1);
      }
      if (m > 0 && n > 0) {
        value += up * std::sqrt(static_cast<double>(m) * n) * rho(m - 1, n - 1);
      }
      if (w != 0.0) value += cd(0.0, -w * (m - n)) * rho(m, n);
      out(m, n) = value;
    }
  }
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladParams& p) {
  ComplexMatrix out(rho.dim(), rho.dim());
  lindblad_rhs(rho.matrix(), p, out);
  return out;
}

EvolveResult evolve(const DensityMatrix& rho0, const LindbladParams& p, double T, double dt,
                    const EvolveOptions& opts) {
  p.validate();
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("evolve: T must be non-negative");
  if (!(dt > 0.0)) throw ConfigError("evolve: dt must be positive");
  const int n_max = rho0.n_max();
  const double stiffness = dt * p.down_rate() * (n_max + 1);
  if (!(stiffness < 0.1)) {
    throw ConfigError("evolve: step too large, dt * Gamma_down * (N_max + 1) = " +
                      std::to_string(stiffness) + " must stay below 0.1");
  }
  if (!p.rotating_frame && !(dt * p.omega_b * std::max(n_max, 1) < 0.1)) {
    throw ConfigError("evolve: lab-frame step too large, dt * omega_b * N_max must stay below 0.1");
  }

  const long steps = (T == 0.0) ? 0 : static_cast<long>(std::ceil(T / dt * (1.0 - 1e-12)));
  const double h = steps > 0 ? T / static_cast<double>(steps) : 0.0;

  EvolveResult result;
  result.steps = steps;
  result.step = h;

  ComplexMatrix rho = rho0.matrix();
  const Eigen::Index d = rho.rows();
  ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);

  auto top_population = [&]() { return std::abs(rho(n_max, n_max).real()); };

  // sample index i lands on step round(i * steps / (samples - 1))
  const int samples = opts.samples;
  int next_sample = 0;
  auto sample_step = [&](int i) -> long {
    if (samples <= 1) return 0;
    return static_cast<long>(std::llround(static_cast<double>(i) * steps / (samples - 1)));
  };
  auto record = [&](long step) {
    while (next_sample < samples && sample_step(next_sample) == step) {
      const DensityMatrix view(rho);
      result.trajectory.push_back({h * static_cast<double>(step), view.mean_n(),
                                   view.trace_error(), top_population()});
      ++next_sample;
    }
  };

  result.max_level_population = top_population();
  record(0);
  const bool dynamics = p.down_rate() > 0.0 || (!p.rotating_frame && p.omega_b != 0.0);
  for (long s = 1; s <= steps; ++s) {
    if (dynamics) {
      lindblad_rhs(rho, p, k1);
      tmp = rho + (0.5 * h) * k1;
      lindblad_rhs(tmp, p, k2);
      tmp = rho + (0.5 * h) * k2;
      lindblad_rhs(tmp, p, k3);
      tmp = rho + h * k3;
      lindblad_rhs(tmp, p, k4);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    result.max_level_population = std::max(result.max_level_population, top_population());
    if (result.max_level_population > opts.truncation_threshold) {
      if (opts.truncation == TruncationPolicy::Error) {
        throw TruncationError("Fock truncation saturated: population " +
                              std::to_string(result.max_level_population) + " at level N_max = " +
                              std::to_string(n_max) + " exceeds " +
                              std::to_string(opts.truncation_threshold) +
                              "; raise N_max or use the analytic moments");
      }
      result.truncation_warning = true;
    }
    record(s);
  }
  result.rho = DensityMatrix(std::move(rho));
  return result;
}

DensityMatrix steady_state(const LindbladParams& p, int n_max) {
  p.validate();
  require_levels(n_max);
  const double nbar = p.equilibrium_occupation();
  const double tail = std::pow(nbar / (nbar + 1.0), n_max);
  if (!(tail < 1e-12)) {
    throw TruncationError("steady_state: occupation " + std::to_string(nbar) +
                          " leaves a truncation tail " + std::to_string(tail) +
                          " at N_max = " + std::to_string(n_max) +
                          "; use analytic_moments for large occupations");
  }
  return DensityMatrix::thermal(n_max, nbar);
}

double analytic_moments(const LindbladParams& p, double t, double n0) {
  const double n_eq = p.equilibrium_occupation();
  return n_eq + (n0 - n_eq) * std::exp(-p.total_rate() * t);
}

}  // namespace ubdm
