#include <benchmark/benchmark.h>

#include <cmath>

#include <ubdm/ubdm.hpp>

using namespace ubdm;

namespace {

void BM_NeffShm(benchmark::State& state) {
  const auto dist = VelocityDistribution::shm();
  const double mass = 1e-5;
  const double omega_b = doppler_shifted_frequency(mass, 232e3);
  const double rho = FieldQuantizationContext{}.rho_DM;
  for (auto _ : state) benchmark::DoNotOptimize(n_eff(dist, mass, rho, omega_b));
}
BENCHMARK(BM_NeffShm);

void BM_NeffShmPlusPlus(benchmark::State& state) {
  const auto dist = VelocityDistribution::shm_plus_plus();
  const double mass = 1e-5;
  const double omega_b = doppler_shifted_frequency(mass, 232e3);
  const double rho = FieldQuantizationContext{}.rho_DM;
  for (auto _ : state) benchmark::DoNotOptimize(n_eff(dist, mass, rho, omega_b));
}
BENCHMARK(BM_NeffShmPlusPlus);

void BM_ThermalG1(benchmark::State& state) {
  const double mass = 1e-5;
  const FieldState s = ThermalState(MomentumDistribution(VelocityDistribution::shm(), mass));
  const double tau = static_cast<double>(state.range(0)) *
                     coherence_time(doppler_shifted_frequency(mass, 232e3), 1e6);
  for (auto _ : state) benchmark::DoNotOptimize(g1(s, tau));
}
BENCHMARK(BM_ThermalG1)->Arg(1)->Arg(10)->Arg(50);

void BM_LindbladStep(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  LindbladParams p;
  p.gamma = 1.0;
  p.n_eff = 0.5;
  const auto rho = DensityMatrix::thermal(n_max, 0.3);
  const double dt = 0.05 / (p.down_rate() * (n_max + 1));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(rho, p, dt, dt).rho.mean_n());
}
BENCHMARK(BM_LindbladStep)->Arg(10)->Arg(30)->Arg(100);

void BM_OutputPsdAndG1(benchmark::State& state) {
  TwoCavityParams p;
  p.omega_phi_prime = doppler_shifted_frequency(1e-5, 232e3);
  p.omega_b = p.omega_phi_prime;
  p.kappa_c = p.omega_b / 1e4;
  p.g2c = 0.05 * std::sqrt(p.kappa_a() * p.kappa_c);
  const auto omega = uniform_grid(p.omega_b, 20.0 * p.kappa_c, static_cast<int>(state.range(0)));
  const auto inputs = InputSpectra::flat(1.0, 1e3);
  for (auto _ : state) {
    const auto grid = output_psd(p, inputs, omega);
    benchmark::DoNotOptimize(g1_time_domain(grid, Window::Hann).G1.data());
  }
}
BENCHMARK(BM_OutputPsdAndG1)->Arg(4096)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
