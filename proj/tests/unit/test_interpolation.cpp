#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <ubdm/errors.hpp>
#include <ubdm/interpolation.hpp>
#include <ubdm/table.hpp>

using namespace ubdm;

TEST_SUITE("interpolation") {
  TEST_CASE("reproduces knots and linear data, zero outside") {
    MonotoneCubic lin({0.0, 1.0, 3.0, 4.0}, {1.0, 3.0, 7.0, 9.0});
    for (double x : {0.0, 0.25, 1.0, 2.2, 3.0, 3.9, 4.0}) {
      CHECK(std::abs(lin(x) - (1.0 + 2.0 * x)) < 1e-14);
    }
    CHECK(lin(-1e-9) == 0.0);
    CHECK(lin(4.0 + 1e-9) == 0.0);
    CHECK(lin.x_min() == 0.0);
    CHECK(lin.x_max() == 4.0);
  }

  TEST_CASE("monotone data stays monotone and positive data stays non-negative") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x{0.0};
      std::vector<double> y{0.0};
      for (int i = 1; i < 12; ++i) {
        x.push_back(x.back() + 0.01 + u(rng));
        y.push_back(y.back() + (u(rng) < 0.3 ? 0.0 : 5.0 * u(rng)));
      }
      MonotoneCubic f(x, y);
      double prev = -1.0;
      for (int i = 0; i <= 2000; ++i) {
        const double xi = x.front() + (x.back() - x.front()) * i / 2000.0;
        const double v = f(xi);
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
    }

    // a spike with zeros around it must not dip below zero
    MonotoneCubic spike({0, 1, 2, 3, 4}, {0, 0, 10, 0, 0});
    for (int i = 0; i <= 400; ++i) CHECK(spike(i / 100.0) >= 0.0);
  }

  TEST_CASE("converges on smooth data") {
    auto err = [](int n) {
      std::vector<double> x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = 3.0 * i / (n - 1);
        y[i] = std::exp(-x[i]);
      }
      MonotoneCubic f(x, y);
      double worst = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double xi = 3.0 * i / 1000.0;
        worst = std::max(worst, std::abs(f(xi) - std::exp(-xi)));
      }
      return worst;
    };
    CHECK(err(200) < 3e-5);
    CHECK(err(200) < err(50) / 8.0);
  }

  TEST_CASE("bad inputs") {
    CHECK_THROWS_AS(MonotoneCubic({0.0}, {1.0}), UsageError);
    CHECK_THROWS_AS(MonotoneCubic({0.0, 1.0}, {1.0}), UsageError);
    CHECK_THROWS_AS(MonotoneCubic({0.0, 0.0}, {1.0, 2.0}), UsageError);
  }

  TEST_CASE("two-column table parsing") {
    std::istringstream good("# speed density\n0 0\n1e5, 2.5 # trailing\n\n2e5\t1.0\n");
    const auto t = parse_two_column(good, "good");
    REQUIRE(t.x.size() == 3);
    CHECK(t.x[1] == 1e5);
    CHECK(t.y[1] == 2.5);
    CHECK_NOTHROW(validate_density_table(t, "good"));

    std::istringstream three("1 2 3\n");
    CHECK_THROWS_AS(parse_two_column(three, "three"), ConfigError);
    std::istringstream word("1 abc\n");
    CHECK_THROWS_AS(parse_two_column(word, "word"), ConfigError);
    try {
      std::istringstream bad("0 1\nx y\n");
      parse_two_column(bad, "tbl");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("tbl:2") != std::string::npos);
    }

    CHECK_THROWS_AS(validate_density_table({{0.0, 0.0}, {1.0, 1.0}}, "dup"), ConfigError);
    CHECK_THROWS_AS(validate_density_table({{0.0, 1.0}, {1.0, -1.0}}, "neg"), ConfigError);
    CHECK_THROWS_AS(validate_density_table({{0.0}, {1.0}}, "short"), ConfigError);
    CHECK_THROWS_AS(read_two_column("/nonexistent/table.txt"), ConfigError);
  }
}
