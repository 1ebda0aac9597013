#pragma once

// Thermal Lindblad master equation for the haloscope mode on a truncated
// Fock basis, with the closed-form first moment for occupations that no
// truncation can hold.

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace ubdm {

using ComplexMatrix = Eigen::MatrixXcd;

//! Density matrix on Fock levels 0..N_max.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix vacuum(int n_max);
  static DensityMatrix fock(int n_max, int n);
  //! Bose-Einstein populations p_n ~ (nbar/(nbar+1))^n, renormalized on 0..n_max.
  static DensityMatrix thermal(int n_max, double nbar);

  int n_max() const { return static_cast<int>(m_.rows()) - 1; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  ComplexMatrix& matrix() { return m_; }

  double population(int n) const { return m_(n, n).real(); }
  std::vector<double> populations() const;
  double mean_n() const;
  double trace_error() const;
  //! max |rho - rho^dagger| entrywise
  double hermiticity_error() const;
  double min_eigenvalue() const;
  //! Throws DomainError when Hermiticity (1e-12), trace (1e-10) or
  //! positivity (-1e-10) fails.
  void validate() const;

 private:
  ComplexMatrix m_;
};

//! Gamma and n_eff describe the axion bath; env_* an optional ordinary bath.
struct LindbladParams {
  double gamma = 0.0;    // rad/s
  double n_eff = 0.0;
  double omega_b = 0.0;  // rad/s, used only in the lab frame
  double env_kappa = 0.0;
  double env_nth = 0.0;
  bool rotating_frame = true;

  void validate() const;
  //! Total downward rate Gamma (n+1) + kappa (n_th+1).
  double down_rate() const;
  //! Total upward rate Gamma n + kappa n_th.
  double up_rate() const;
  //! Relaxation rate of <n>: Gamma + kappa.
  double total_rate() const { return gamma + env_kappa; }
  //! Rate-weighted equilibrium occupation (Gamma n + kappa n_th) / (Gamma + kappa).
  double equilibrium_occupation() const;
};

//! d rho / dt, including the commutator with hbar omega_b b^dagger b unless
//! rotating_frame is set. Throws UsageError when out does not match rho.
void lindblad_rhs(const ComplexMatrix& rho, const LindbladParams& p, ComplexMatrix& out);
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladParams& p);

enum class TruncationPolicy { Error, Warn };

struct EvolveOptions {
  TruncationPolicy truncation = TruncationPolicy::Error;
  double truncation_threshold = 1e-6;
  //! Number of equally spaced trajectory samples (t = 0 and t = T included
  //! when >= 2); 0 records nothing.
  int samples = 0;
};

struct TrajectoryRow {
  double t;
  double mean_n;
  double trace_error;
  double max_level_population;
};

struct EvolveResult {
  DensityMatrix rho;
  std::vector<TrajectoryRow> trajectory;
  long steps = 0;
  double step = 0.0;
  //! Largest population seen at level N_max.
  double max_level_population = 0.0;
  bool truncation_warning = false;
};

//! Classic RK4 to time T with steps no longer than dt. Requires
//! dt down_rate (N_max + 1) < 0.1 and, in the lab frame,
//! dt omega_b N_max < 0.1 (ConfigError otherwise).
EvolveResult evolve(const DensityMatrix& rho0, const LindbladParams& p, double T, double dt,
                    const EvolveOptions& opts = {});

//! Truncated Bose-Einstein state of the combined bath. Throws TruncationError
//! when (n/(n+1))^N_max >= 1e-12.
DensityMatrix steady_state(const LindbladParams& p, int n_max);

//! <n>(t) = n_eq + (n0 - n_eq) exp(-(Gamma + kappa) t).
double analytic_moments(const LindbladParams& p, double t, double n0);

}  // namespace ubdm
