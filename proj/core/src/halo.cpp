#include "ubdm/halo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "ubdm/errors.hpp"
#include "ubdm/interpolation.hpp"
#include "ubdm/quadrature.hpp"
#include "ubdm/table.hpp"

namespace ubdm {

std::string_view to_string(HaloModel model) {
  switch (model) {
    case HaloModel::SHM: return "shm";
    case HaloModel::SHMpp: return "shmpp";
    case HaloModel::Tabulated: return "tabulated";
  }
  return "unknown";
}

Vec3 ShmPlusPlusParams::sausage_dispersion() const {
  if (sausage_sigma) return *sausage_sigma;
  const double v0_sq = 2.0 * v_v * v_v;
  const double radial_sq = 3.0 * v0_sq / (2.0 * (3.0 - 2.0 * beta));
  const double tangential = std::sqrt((1.0 - beta) * radial_sq);
  return {std::sqrt(radial_sq), tangential, tangential};
}

namespace {

constexpr int kAngularNodes = 96;
constexpr int kAzimuthNodes = 128;

const quad::GaussLegendre& angular_rule() {
  static const quad::GaussLegendre rule(kAngularNodes);
  return rule;
}

// exp(-x) I0(x) for x >= 0
double bessel_i0_scaled(double x) {
  if (x <= 30.0) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-x);
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 2 * static_cast<int>(x); ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(kTwoPi * x);
}

struct IsotropicGaussian {
  Vec3 center;
  double sigma;

  double raw_density(const Vec3& v) const {
    return std::exp(-(v - center).squaredNorm() / (2.0 * sigma * sigma));
  }

  double raw_angular(double v) const {
    const double s2 = sigma * sigma;
    const double vg = center.norm();
    const double x = v * vg / s2;
    if (x < 1e-4) {
      return 4.0 * kPi * std::exp(-(v * v + vg * vg) / (2.0 * s2)) * (1.0 + x * x / 6.0);
    }
    const double d = v - vg;
    return kTwoPi * s2 / (v * vg) * std::exp(-d * d / (2.0 * s2)) * (-std::expm1(-2.0 * x));
  }

  Vec3 draw(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal(0.0, sigma);
    return center + Vec3(normal(rng), normal(rng), normal(rng));
  }
};

struct AnisotropicGaussian {
  Vec3 center;
  Vec3 sigma;

  double raw_density(const Vec3& v) const {
    const Vec3 d = (v - center).cwiseQuotient(sigma);
    return std::exp(-0.5 * d.squaredNorm());
  }

  double raw_angular(double v) const {
    const auto& rule = angular_rule();
    if (v == 0.0) return 4.0 * kPi * raw_density(Vec3::Zero());
    double total = 0.0;
    if (center.x() == 0.0 && center.y() == 0.0) {
      // azimuth done analytically: int dphi exp(-a cos^2 - b sin^2) = 2 pi e^{-(a+b)/2} I0((a-b)/2)
      const double ax = 1.0 / (2.0 * sigma.x() * sigma.x());
      const double ay = 1.0 / (2.0 * sigma.y() * sigma.y());
      const double sz2 = 2.0 * sigma.z() * sigma.z();
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double mu = rule.nodes[j];
        const double rho2 = v * v * (1.0 - mu * mu);
        const double dz = v * mu - center.z();
        const double y = 0.5 * rho2 * std::abs(ax - ay);
        const double exponent = -dz * dz / sz2 - 0.5 * rho2 * (ax + ay) + y;
        total += rule.weights[j] * kTwoPi * std::exp(exponent) * bessel_i0_scaled(y);
      }
      return total;
    }
    const double dphi = kTwoPi / kAzimuthNodes;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double mu = rule.nodes[j];
      const double sin_theta = std::sqrt(1.0 - mu * mu);
      double ring = 0.0;
      for (int i = 0; i < kAzimuthNodes; ++i) {
        const double phi = dphi * i;
        const Vec3 dir(sin_theta * std::cos(phi), sin_theta * std::sin(phi), mu);
        ring += raw_density(v * dir);
      }
      total += rule.weights[j] * ring * dphi;
    }
    return total;
  }

  Vec3 draw(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    return center + Vec3(sigma.x() * normal(rng), sigma.y() * normal(rng), sigma.z() * normal(rng));
  }
};

struct TabulatedShape {
  MonotoneCubic speed_density;
  double peak;

  double raw_speed(double v) const { return std::max(0.0, speed_density(v)); }

  double raw_angular(double v) const {
    const double vv = (v > 0.0) ? v : 1e-9 * speed_density.x_max();
    return raw_speed(vv) / (vv * vv);
  }

  double raw_density(const Vec3& v) const { return raw_angular(v.norm()) / (4.0 * kPi); }

  Vec3 draw(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double speed = 0.0;
    for (;;) {
      speed = speed_density.x_min() + uniform(rng) * (speed_density.x_max() - speed_density.x_min());
      if (uniform(rng) * peak <= raw_speed(speed)) break;
    }
    const double mu = 2.0 * uniform(rng) - 1.0;
    const double phi = kTwoPi * uniform(rng);
    const double st = std::sqrt(1.0 - mu * mu);
    return speed * Vec3(st * std::cos(phi), st * std::sin(phi), mu);
  }
};

using Shape = std::variant<IsotropicGaussian, AnisotropicGaussian, TabulatedShape>;

struct Component {
  double weight;
  Shape shape;
  double norm = 1.0;
};

double raw_speed_marginal(const Shape& shape, double v) {
  return std::visit(
      [v](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TabulatedShape>) {
          return s.raw_speed(v);
        } else {
          return v * v * s.raw_angular(v);
        }
      },
      shape);
}

double normalization(const Shape& shape, double lower, double v_esc, int panels) {
  quad::Options opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-13;
  opts.initial_panels = panels;
  const auto result =
      quad::integrate([&](double v) { return raw_speed_marginal(shape, v); }, lower, v_esc, opts);
  if (!(result.value > 0.0)) throw DomainError("velocity distribution has zero mass below v_esc");
  return result.value;
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

struct VelocityDistribution::Impl {
  HaloModel model;
  Vec3 v_g = Vec3::Zero();
  double v_esc = 0.0;
  std::vector<Component> components;
};

VelocityDistribution::VelocityDistribution(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

VelocityDistribution VelocityDistribution::shm(const ShmParams& params) {
  require_positive(params.v_esc, "v_esc");
  require_positive(params.v_v, "v_v");
  auto impl = std::make_shared<Impl>();
  impl->model = HaloModel::SHM;
  impl->v_g = params.v_g;
  impl->v_esc = params.v_esc;
  Component round{1.0, IsotropicGaussian{params.v_g, params.v_v}};
  round.norm = normalization(round.shape, 0.0, params.v_esc, 8);
  impl->components.push_back(std::move(round));
  return VelocityDistribution(std::move(impl));
}

VelocityDistribution VelocityDistribution::shm_plus_plus(const ShmPlusPlusParams& params) {
  require_positive(params.v_esc, "v_esc");
  require_positive(params.v_v, "v_v");
  if (!(params.eta >= 0.0 && params.eta <= 1.0)) {
    throw DomainError("SHM++ mixing fraction eta must lie in [0, 1]");
  }
  if (!params.sausage_sigma && !(params.beta < 1.0)) {
    throw DomainError("SHM++ anisotropy beta must be below 1");
  }
  const Vec3 sigma = params.sausage_dispersion();
  for (int i = 0; i < 3; ++i) require_positive(sigma[i], "Sausage dispersion");

  auto impl = std::make_shared<Impl>();
  impl->model = HaloModel::SHMpp;
  impl->v_g = params.v_g;
  impl->v_esc = params.v_esc;
  Component round{1.0 - params.eta, IsotropicGaussian{params.v_g, params.v_v}};
  round.norm = normalization(round.shape, 0.0, params.v_esc, 8);
  impl->components.push_back(std::move(round));
  if (params.eta > 0.0) {
    Component sausage{params.eta, AnisotropicGaussian{params.v_g, sigma}};
    sausage.norm = normalization(sausage.shape, 0.0, params.v_esc, 8);
    impl->components.push_back(std::move(sausage));
  }
  return VelocityDistribution(std::move(impl));
}

VelocityDistribution VelocityDistribution::tabulated(std::vector<double> speed,
                                                     std::vector<double> density) {
  TwoColumnTable table{std::move(speed), std::move(density)};
  validate_density_table(table, "tabulated speed distribution");
  if (table.x.front() < 0.0) throw ConfigError("tabulated speeds must be non-negative");
  const double peak = *std::max_element(table.y.begin(), table.y.end());
  const int panels = static_cast<int>(table.x.size()) - 1;
  const double lower = table.x.front();
  const double upper = table.x.back();

  auto impl = std::make_shared<Impl>();
  impl->model = HaloModel::Tabulated;
  impl->v_esc = upper;
  Component comp{1.0, TabulatedShape{MonotoneCubic(std::move(table.x), std::move(table.y)), peak}};
  comp.norm = normalization(comp.shape, lower, upper, panels);
  impl->components.push_back(std::move(comp));
  return VelocityDistribution(std::move(impl));
}

VelocityDistribution VelocityDistribution::load_table(const std::filesystem::path& path) {
  auto table = read_two_column(path);
  validate_density_table(table, path.string());
  return tabulated(std::move(table.x), std::move(table.y));
}

HaloModel VelocityDistribution::model() const { return impl_->model; }
const Vec3& VelocityDistribution::lab_velocity() const { return impl_->v_g; }
double VelocityDistribution::escape_speed() const { return impl_->v_esc; }

double VelocityDistribution::density(const Vec3& v) const {
  if (v.norm() > impl_->v_esc) return 0.0;
  double total = 0.0;
  for (const auto& c : impl_->components) {
    total += c.weight / c.norm *
             std::visit([&](const auto& s) { return s.raw_density(v); }, c.shape);
  }
  return total;
}

double VelocityDistribution::angular_integral(double speed) const {
  if (speed < 0.0) throw DomainError("speed must be non-negative");
  if (speed > impl_->v_esc) return 0.0;
  double total = 0.0;
  for (const auto& c : impl_->components) {
    total += c.weight / c.norm *
             std::visit([&](const auto& s) { return s.raw_angular(speed); }, c.shape);
  }
  return total;
}

double VelocityDistribution::speed_marginal(double speed) const {
  if (speed < 0.0) throw DomainError("speed must be non-negative");
  if (speed > impl_->v_esc) return 0.0;
  double total = 0.0;
  for (const auto& c : impl_->components) {
    total += c.weight / c.norm * raw_speed_marginal(c.shape, speed);
  }
  return total;
}

Vec3 VelocityDistribution::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Component* chosen = &impl_->components.front();
  if (impl_->components.size() > 1) {
    double u = uniform(rng);
    for (const auto& c : impl_->components) {
      chosen = &c;
      if (u < c.weight) break;
      u -= c.weight;
    }
  }
  for (;;) {
    const Vec3 v = std::visit([&](const auto& s) { return s.draw(rng); }, chosen->shape);
    if (v.norm() <= impl_->v_esc) return v;
  }
}

MomentumDistribution::MomentumDistribution(VelocityDistribution velocity, double mass_eV)
    : velocity_(std::move(velocity)), mass_eV_(mass_eV) {
  require_positive(mass_eV, "mass_eV");
  hbar_over_m_ = kPhys.hbar / mass_kg(mass_eV);
}

double MomentumDistribution::density(const Vec3& k) const {
  const double j = hbar_over_m_;
  return velocity_.density(j * k) * j * j * j;
}

double MomentumDistribution::angular_integral(double k) const {
  const double j = hbar_over_m_;
  return velocity_.angular_integral(j * k) * j * j * j;
}

double MomentumDistribution::radial_density(double k) const {
  return velocity_.speed_marginal(hbar_over_m_ * k) * hbar_over_m_;
}

double eval_f_v(const VelocityDistribution& dist, const Vec3& v) { return dist.density(v); }

double speed_marginal(const VelocityDistribution& dist, double speed) {
  return dist.speed_marginal(speed);
}

double momentum_density(const MomentumDistribution& dist, const Vec3& k) {
  return dist.density(k);
}

double radial_momentum_density(const MomentumDistribution& dist, double k) {
  if (k < 0.0) throw DomainError("k must be non-negative");
  return dist.radial_density(k);
}

double n_eff(const VelocityDistribution& dist, double mass_eV, double rho_DM, double omega_b) {
  if (!(rho_DM >= 0.0)) throw DomainError("rho_DM must be non-negative");
  const double k_b = k_of_omega(omega_b, mass_eV);
  const MomentumDistribution momentum(dist, mass_eV);
  const double solid_angle = momentum.angular_integral(k_b);
  const double rest_energy = eV(mass_eV);
  return (2.0 * kPi) * (2.0 * kPi) * rho_DM / (2.0 * rest_energy) * solid_angle;
}

double mean_inverse_omega(const VelocityDistribution& dist, double mass_eV) {
  const double omega_c = compton_frequency(mass_eV);
  // <1/w> = (1/wc) (1 - int F(v) [1 - 1/sqrt(1 + b^2)] dv), b = v/c
  auto deficit = [&](double v) {
    const double b2 = (v / kPhys.c) * (v / kPhys.c);
    const double root = std::sqrt(1.0 + b2);
    return dist.speed_marginal(v) * b2 / (root * (1.0 + root));
  };
  quad::Options opts;
  opts.abs_tol = 1e-18;
  opts.rel_tol = 1e-12;
  opts.initial_panels = 8;
  const double correction = quad::integrate(deficit, 0.0, dist.escape_speed(), opts).value;
  quad::Options norm_opts = opts;
  norm_opts.abs_tol = 1e-14;
  const double mass = quad::integrate([&](double v) { return dist.speed_marginal(v); }, 0.0,
                                      dist.escape_speed(), norm_opts)
                          .value;
  return (mass - correction) / omega_c;
}

}  // namespace ubdm
