#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <ubdm/errors.hpp>
#include <ubdm/quadrature.hpp>

using namespace ubdm;

TEST_SUITE("quadrature") {
  TEST_CASE("smooth integrals with closed forms") {
    auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-14);

    r = quad::integrate([](double x) { return 1.0 / (1.0 + x * x); }, -50.0, 50.0);
    CHECK(std::abs(r.value - 2.0 * std::atan(50.0)) < 1e-12);

    // integrable endpoint singularity
    r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                        {.abs_tol = 1e-10, .rel_tol = 1e-10, .max_intervals = 4000});
    CHECK(std::abs(r.value - 2.0) < 1e-8);

    // reversed bounds flip the sign; empty interval is zero
    r = quad::integrate([](double x) { return x * x; }, 2.0, 0.0);
    CHECK(std::abs(r.value + 8.0 / 3.0) < 1e-14);
    CHECK(quad::integrate([](double x) { return x; }, 1.0, 1.0).value == 0.0);
  }

  TEST_CASE("oscillatory complex integrand") {
    const double w = 200.0;
    auto f = [&](double x) { return std::exp(std::complex<double>(0.0, -w * x)) * std::exp(-x); };
    quad::Options opts;
    opts.initial_panels = 64;
    const auto r = quad::integrate(f, 0.0, 5.0, opts);
    const std::complex<double> s(1.0, w);
    const std::complex<double> exact = (1.0 - std::exp(-5.0 * s)) / s;
    CHECK(std::abs(r.value - exact) < 1e-12);
  }

  TEST_CASE("non-convergence is reported") {
    quad::Options opts;
    opts.max_intervals = 4;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-15;
    auto wild = [](double x) { return std::sin(1.0 / (x + 1e-6)); };
    CHECK_THROWS_AS(quad::integrate(wild, 0.0, 1.0, opts), NumericalError);
    try {
      quad::integrate(wild, 0.0, 1.0, opts);
    } catch (const NumericalError& e) {
      CHECK(std::string(e.what()).find("did not converge") != std::string::npos);
    }
    CHECK_THROWS_AS(quad::integrate([](double) { return 1.0; }, 0.0, INFINITY), UsageError);
  }

  TEST_CASE("result does not depend on the panel split beyond tolerance") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    const double exact = std::sqrt(std::numbers::pi) * std::exp(-9.0 / 4.0);
    for (int panels : {1, 3, 17}) {
      quad::Options opts;
      opts.initial_panels = panels;
      CHECK(std::abs(quad::integrate(f, -12.0, 12.0, opts).value - exact) < 1e-13);
    }
  }

  TEST_CASE("Gauss-Legendre exactness") {
    for (int n : {1, 2, 5, 16, 96}) {
      quad::GaussLegendre gl(n);
      double wsum = 0.0;
      for (double w : gl.weights) wsum += w;
      CHECK(std::abs(wsum - 2.0) < 1e-13);
      for (int deg = 0; deg <= 2 * n - 1 && deg <= 40; ++deg) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], deg);
        const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
        CHECK(std::abs(s - exact) < 1e-13);
      }
      for (int i = 1; i < n; ++i) CHECK(gl.nodes[i] > gl.nodes[i - 1]);
    }
    CHECK_THROWS_AS(quad::GaussLegendre(0), UsageError);
  }
}
