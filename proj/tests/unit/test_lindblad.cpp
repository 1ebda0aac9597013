#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include <ubdm/errors.hpp>
#include <ubdm/lindblad.hpp>

using namespace ubdm;
using cd = std::complex<double>;

namespace {

// Generator built from explicit operator products on the truncated space.
ComplexMatrix oracle_rhs(const ComplexMatrix& rho, const LindbladParams& p) {
  const Eigen::Index d = rho.rows();
  ComplexMatrix b = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  const ComplexMatrix bd = b.adjoint();
  auto D = [&](const ComplexMatrix& L) {
    const ComplexMatrix LdL = L.adjoint() * L;
    return ComplexMatrix(L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL));
  };
  const double down = p.gamma * (p.n_eff + 1.0) + p.env_kappa * (p.env_nth + 1.0);
  const double up = p.gamma * p.n_eff + p.env_kappa * p.env_nth;
  ComplexMatrix out = down * D(b) + up * D(bd);
  if (!p.rotating_frame) {
    const ComplexMatrix H = p.omega_b * bd * b;
    out += cd(0.0, -1.0) * (H * rho - rho * H);
  }
  return out;
}

// Random mixed state supported on levels 0..support (default: all).
DensityMatrix random_state(int n_max, std::uint64_t seed, int support = -1) {
  if (support < 0) support = n_max;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  ComplexMatrix A = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (Eigen::Index i = 0; i <= support; ++i)
    for (Eigen::Index j = 0; j <= support; ++j) A(i, j) = cd(n01(rng), n01(rng));
  ComplexMatrix rho = A * A.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

double bose_einstein(double nbar, int n) { return std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1); }

LindbladParams bath(double gamma, double nbar) {
  LindbladParams p;
  p.gamma = gamma;
  p.n_eff = nbar;
  return p;
}

}  // namespace

TEST_SUITE("lindblad") {
  TEST_CASE("density matrix constructors and checks") {
    const auto vac = DensityMatrix::vacuum(5);
    CHECK(vac.dim() == 6);
    CHECK(vac.population(0) == 1.0);
    CHECK(vac.mean_n() == 0.0);
    const auto f = DensityMatrix::fock(5, 3);
    CHECK(f.mean_n() == 3.0);
    CHECK_THROWS_AS(DensityMatrix::fock(5, 6), UsageError);
    CHECK_THROWS_AS(DensityMatrix::vacuum(-1), UsageError);

    const auto th = DensityMatrix::thermal(200, 1.0);
    CHECK(std::abs(th.population(0) - 0.5) < 1e-15);
    CHECK(std::abs(th.population(2) - 0.125) < 1e-15);
    CHECK(std::abs(th.mean_n() - 1.0) < 1e-12);
    CHECK(th.trace_error() < 1e-15);
    CHECK_NOTHROW(th.validate());

    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 1.0;
    bad(0, 1) = cd(0.1, 0.0);
    CHECK_THROWS_AS(DensityMatrix(bad).validate(), DomainError);
    bad(1, 0) = cd(0.1, 0.0);
    bad(0, 0) = 1.2;
    bad(1, 1) = -0.2;
    CHECK_THROWS_AS(DensityMatrix(bad).validate(), DomainError);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Zero(2, 3)), UsageError);
  }

  TEST_CASE("parameters") {
    LindbladParams p = bath(2.0, 0.5);
    p.env_kappa = 1.0;
    p.env_nth = 2.0;
    CHECK(p.down_rate() == doctest::Approx(2.0 * 1.5 + 3.0));
    CHECK(p.up_rate() == doctest::Approx(1.0 + 2.0));
    CHECK(p.total_rate() == 3.0);
    CHECK(p.equilibrium_occupation() == doctest::Approx(1.0));
    p.gamma = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
  }

  TEST_CASE("generator matches explicit operator products") {
    for (bool rotating : {true, false}) {
      LindbladParams p = bath(0.7, 1.3);
      p.env_kappa = 0.2;
      p.env_nth = 0.4;
      p.omega_b = 3.1;
      p.rotating_frame = rotating;
      const auto rho = random_state(12, 5);
      const ComplexMatrix got = lindblad_rhs(rho, p);
      const ComplexMatrix want = oracle_rhs(rho.matrix(), p);
      CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12 * want.cwiseAbs().maxCoeff());
      CHECK(std::abs(got.trace()) < 1e-12);
      CHECK((got - got.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    ComplexMatrix out(3, 3);
    CHECK_THROWS_AS(lindblad_rhs(DensityMatrix::vacuum(3).matrix(), bath(1, 0), out), UsageError);
  }

  TEST_CASE("generator special cases") {
    const ComplexMatrix zero = lindblad_rhs(DensityMatrix::vacuum(10), bath(1.0, 0.0));
    CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

    const ComplexMatrix d = lindblad_rhs(DensityMatrix::fock(10, 1), bath(2.5, 0.0));
    double dn = 0.0;
    for (int n = 0; n <= 10; ++n) dn += n * d(n, n).real();
    CHECK(std::abs(dn + 2.5) < 1e-14);
  }

  TEST_CASE("detailed balance: Bose-Einstein states are stationary") {
    for (double nbar : {0.0, 0.3, 1.0, 3.0}) {
      const auto th = DensityMatrix::thermal(30, nbar);
      for (int n = 0; n <= 10; ++n) {
        const double expected = bose_einstein(nbar, n) / (1.0 - std::pow(nbar / (nbar + 1), 31));
        CHECK(std::abs(th.population(n) - expected) < 1e-14);
      }
      const ComplexMatrix r = lindblad_rhs(th, bath(1.0, nbar));
      CHECK(r.cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("no dynamics without coupling") {
    const auto rho0 = random_state(8, 11, 4);
    const auto res = evolve(rho0, bath(0.0, 0.0), 5.0, 0.01);
    CHECK((res.rho.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("thermal relaxation from vacuum stays Bose-Einstein") {
    const double gamma = 1.0, nbar = 0.5, T = 10.0;
    const auto p = bath(gamma, nbar);
    EvolveOptions opts;
    opts.samples = 21;
    const auto res = evolve(DensityMatrix::vacuum(30), p, T / gamma, 2e-3, opts);
    // the state is thermal at every time with occupation n(t)
    const double nT = nbar * (1.0 - std::exp(-gamma * T));
    CHECK(std::abs(res.rho.mean_n() - nT) / nT < 1e-6);
    for (int n = 0; n <= 30; ++n) CHECK(std::abs(res.rho.population(n) - bose_einstein(nT, n)) < 1e-8);
    for (int n = 0; n <= 30; ++n) CHECK(std::abs(res.rho.population(n) - bose_einstein(nbar, n)) < 1e-4);
    REQUIRE(res.trajectory.size() == 21);
    CHECK(res.trajectory.front().t == 0.0);
    CHECK(std::abs(res.trajectory.back().t - T) < 1e-12);
    for (const auto& row : res.trajectory) {
      CHECK(row.trace_error < 1e-10);
      const double expected = analytic_moments(p, row.t, 0.0);
      if (expected > 0) CHECK(std::abs(row.mean_n - expected) / expected < 1e-6);
    }
    CHECK(res.rho.hermiticity_error() < 1e-12);
    CHECK(res.rho.min_eigenvalue() > -1e-10);
  }

  TEST_CASE("single-quantum decay") {
    const auto res = evolve(DensityMatrix::fock(30, 1), bath(1.0, 0.0), 1.0, 1e-3);
    CHECK(std::abs(res.rho.mean_n() - std::exp(-1.0)) < 1e-6 * std::exp(-1.0));
  }

  TEST_CASE("invariants along a random trajectory") {
    LindbladParams p = bath(0.4, 1.0);
    p.env_kappa = 0.3;
    p.env_nth = 0.2;
    DensityMatrix rho = random_state(20, 3, 4);
    for (int chunk = 0; chunk < 5; ++chunk) {
      rho = evolve(rho, p, 1.0, 2e-3).rho;
      CHECK(rho.trace_error() < 1e-10);
      CHECK(rho.hermiticity_error() < 1e-12);
      CHECK(rho.min_eigenvalue() > -1e-10);
    }
  }

  TEST_CASE("lab frame equals the rotating frame up to phase rotation") {
    const int N = 12;
    ComplexMatrix psi = ComplexMatrix::Zero(N + 1, 1);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(1) = cd(0.0, 1.0 / std::sqrt(3.0));
    psi(2) = 1.0 / std::sqrt(6.0);
    const DensityMatrix rho0(ComplexMatrix(psi * psi.adjoint()));
    LindbladParams p = bath(0.2, 0.1);
    p.omega_b = 5.0;
    const double T = 2.0;
    const auto rot = evolve(rho0, p, T, 1e-4).rho.matrix();
    p.rotating_frame = false;
    const auto lab = evolve(rho0, p, T, 1e-4).rho.matrix();
    for (int m = 0; m <= N; ++m) {
      for (int n = 0; n <= N; ++n) {
        const cd phase = std::exp(cd(0.0, -p.omega_b * (m - n) * T));
        CHECK(std::abs(lab(m, n) - rot(m, n) * phase) < 1e-9);
      }
    }
  }

  TEST_CASE("step-size and truncation guards") {
    CHECK_THROWS_AS(evolve(DensityMatrix::vacuum(30), bath(1.0, 0.5), 1.0, 0.1), ConfigError);
    LindbladParams lab = bath(1e-3, 0.0);
    lab.rotating_frame = false;
    lab.omega_b = 100.0;
    CHECK_THROWS_AS(evolve(DensityMatrix::vacuum(10), lab, 1.0, 1e-3), ConfigError);
    CHECK_NOTHROW(evolve(DensityMatrix::vacuum(10), lab, 1e-3, 1e-5));
    CHECK_THROWS_AS(evolve(DensityMatrix::vacuum(4), bath(1.0, 0.0), -1.0, 1e-3), ConfigError);

    const auto hot = bath(1.0, 3.0);
    CHECK_THROWS_AS(evolve(DensityMatrix::vacuum(5), hot, 5.0, 1e-3), TruncationError);
    EvolveOptions warn;
    warn.truncation = TruncationPolicy::Warn;
    const auto res = evolve(DensityMatrix::vacuum(5), hot, 5.0, 1e-3, warn);
    CHECK(res.truncation_warning);
    CHECK(res.max_level_population > 1e-6);
    CHECK(res.rho.trace_error() < 1e-10);
  }

  TEST_CASE("steady state") {
    const auto vac = steady_state(bath(1.0, 0.0), 10);
    CHECK(vac.population(0) == 1.0);
    CHECK(vac.mean_n() == 0.0);

    const auto one = steady_state(bath(1.0, 1.0), 45);
    CHECK(std::abs(one.population(0) - 0.5) < 1e-12);
    CHECK(std::abs(one.population(1) - 0.25) < 1e-12);
    CHECK(std::abs(one.population(2) - 0.125) < 1e-12);
    CHECK(lindblad_rhs(one, bath(1.0, 1.0)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(steady_state(bath(1.0, 1.0), 30), TruncationError);

    LindbladParams mixed = bath(1.0, 0.5);
    mixed.env_kappa = 1.0;
    mixed.env_nth = 0.1;
    const auto ss = steady_state(mixed, 40);
    CHECK(std::abs(ss.mean_n() - 0.3) < 1e-10);
    CHECK(lindblad_rhs(ss, mixed).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("analytic moments") {
    LindbladParams p = bath(1.0, 0.5);
    CHECK(analytic_moments(p, 0.0, 2.0) == 2.0);
    CHECK(std::abs(analytic_moments(p, 1e3, 2.0) - 0.5) < 1e-15);
    p.env_kappa = 2.0;
    p.env_nth = 2.0;
    CHECK(std::abs(analytic_moments(p, 1e3, 0.0) - 1.5) < 1e-14);
    const auto res = evolve(DensityMatrix::vacuum(40), p, 0.5, 2e-4);
    const double expected = analytic_moments(p, 0.5, 0.0);
    CHECK(std::abs(res.rho.mean_n() - expected) / expected < 1e-6);
  }
}
