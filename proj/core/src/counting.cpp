#include "ubdm/counting.hpp"

#include <cmath>
#include <sstream>

#include "ubdm/constants.hpp"
#include "ubdm/errors.hpp"

namespace ubdm {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void validate(const CountingSetup& s) {
  require_positive(s.delta_t, "delta_t");
  require_positive(s.omega_a, "omega_a");
  require_positive(s.delta_omega_a, "delta_omega_a");
  require_positive(s.delta_omega_b, "delta_omega_b");
  if (!(s.H_omega_a >= 0.0)) throw DomainError("H(omega_a) must be non-negative");
  if (!(s.g_coupling >= 0.0)) throw DomainError("coupling must be non-negative");
}

// 2 pi g^2 H / (hbar c^2), per unit G1 and per unit time
double single_rate_factor(const CountingSetup& s) {
  const double c2 = kPhys.c * kPhys.c;
  return kTwoPi * s.g_coupling * s.g_coupling * s.H_omega_a / (kPhys.hbar * c2);
}

void require_valid(const HierarchyReport& report) {
  if (!report.satisfied) throw ValidityError(report.failed);
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

HierarchyReport check_hierarchy(const CountingSetup& setup, double required) {
  validate(setup);
  require_positive(required, "hierarchy ratio");
  HierarchyReport r;
  r.required = required;
  r.carrier_ratio = setup.delta_t * setup.omega_a;
  r.bandwidth_ratio = 1.0 / (setup.delta_t * setup.delta_omega_a);
  r.detector_ratio = setup.delta_t * setup.delta_omega_b;
  auto describe = [&](const char* inequality, double ratio) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "time-scale hierarchy violated: " << inequality << " holds only by a factor " << ratio
        << ", need " << required;
    return msg.str();
  };
  if (r.carrier_ratio < required) {
    r.failed = describe("1/omega_a << delta_t", r.carrier_ratio);
  } else if (r.bandwidth_ratio < required) {
    r.failed = describe("delta_t << 1/delta_omega_a", r.bandwidth_ratio);
  } else if (r.detector_ratio < required) {
    r.failed = describe("delta_t >> 1/delta_omega_b", r.detector_ratio);
  }
  r.satisfied = r.failed.empty();
  return r;
}

DeltaTWindow delta_t_window(double omega_a, double delta_omega_a, double delta_omega_b,
                            double required) {
  require_positive(omega_a, "omega_a");
  require_positive(delta_omega_a, "delta_omega_a");
  require_positive(delta_omega_b, "delta_omega_b");
  const double lower = std::max(required / omega_a, required / delta_omega_b);
  const double upper = 1.0 / (required * delta_omega_a);
  return {lower, upper};
}

CountResult count_prob_single(double G1_0, const CountingSetup& setup, double required) {
  if (!(G1_0 >= 0.0)) throw DomainError("G1(0) must be non-negative");
  CountResult result;
  result.validity = check_hierarchy(setup, required);
  require_valid(result.validity);
  result.probability = single_rate_factor(setup) * G1_0 * setup.delta_t;
  return result;
}

CountResult count_prob_joint(double G2_tau, const CountingSetup& a, const CountingSetup& b,
                             double t_a, double t_b, double required) {
  if (!(G2_tau >= 0.0)) throw DomainError("G2 must be non-negative");
  if (!(same(a.g_coupling, b.g_coupling) && same(a.H_omega_a, b.H_omega_a) &&
        same(a.delta_t, b.delta_t) && same(a.omega_a, b.omega_a) &&
        same(a.delta_omega_a, b.delta_omega_a) && same(a.delta_omega_b, b.delta_omega_b))) {
    throw DomainError("joint counting assumes two identical haloscopes");
  }
  if (!(std::abs(t_a - t_b) >= a.delta_t)) {
    throw DomainError("joint counting needs disjoint intervals: |t_a - t_b| < delta_t");
  }
  CountResult result;
  result.validity = check_hierarchy(a, required);
  require_valid(result.validity);
  const double f = single_rate_factor(a) * a.delta_t;
  result.probability = f * f * G2_tau;
  return result;
}

double counting_ratio(double P_joint, double P_single) {
  if (!(P_single > 0.0)) throw DomainError("single-count probability must be positive");
  return P_joint / (P_single * P_single);
}

double cavity_filter(double omega, double omega_b, double kappa_c) {
  require_positive(kappa_c, "kappa_c");
  const double d = omega - omega_b;
  return kappa_c / (d * d + 0.25 * kappa_c * kappa_c);
}

}  // namespace ubdm
