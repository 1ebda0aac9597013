#pragma once

// Globally adaptive Gauss-Kronrod (10/21) quadrature for real or complex
// integrands, plus Gauss-Legendre rules for fixed-order angular integrals.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <sstream>
#include <numbers>
#include <type_traits>
#include <vector>

#include "ubdm/errors.hpp"

namespace ubdm::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
  //! Uniform panels the interval is split into before adaptation starts;
  //! raise it for oscillatory integrands.
  int initial_panels = 1;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980614757, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes kXgk[1], kXgk[3], ..., kXgk[9].
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
};

template <class T, class F>
Segment<T> kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[10];
  T gauss{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kWgk[j];
    if (j % 2 == 1) gauss += sum * kWg[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

//! Integrate f over [a, b]. Converged when the summed error estimate drops
//! below max(abs_tol, rel_tol * |I|); otherwise throws NumericalError with
//! the achieved error and interval count.
template <class F>
auto integrate(F&& f, double a, double b, const Options& opts = {}) {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> result;
  if (a == b) return result;
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw UsageError("quad::integrate: bounds must be finite");
  }

  auto worse = [](const detail::Segment<T>& x, const detail::Segment<T>& y) {
    return x.error < y.error;
  };
  std::priority_queue<detail::Segment<T>, std::vector<detail::Segment<T>>, decltype(worse)>
      heap(worse);

  const int panels = std::max(1, opts.initial_panels);
  const double width = (b - a) / panels;
  T total{};
  double total_error = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + width * i;
    const double hi = (i + 1 == panels) ? b : a + width * (i + 1);
    auto seg = detail::kronrod21<T>(f, lo, hi);
    total += seg.value;
    total_error += seg.error;
    heap.push(seg);
  }
  result.evaluations = 21 * panels;

  while (total_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= opts.max_intervals) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "adaptive quadrature on [" << a << ", " << b
          << "] did not converge: error estimate " << total_error
          << " exceeds tolerance " << std::max(opts.abs_tol, opts.rel_tol * std::abs(total))
          << " after " << heap.size() << " intervals and " << result.evaluations
          << " evaluations";
      throw NumericalError(msg.str());
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod21<T>(f, worst.a, mid);
    auto right = detail::kronrod21<T>(f, mid, worst.b);
    result.evaluations += 42;
    total += (left.value + right.value) - worst.value;
    total_error += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in interval order so the value does not depend on heap history.
  std::vector<detail::Segment<T>> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  result.value = T{};
  result.error = 0.0;
  for (const auto& s : segments) {
    result.value += s.value;
    result.error += s.error;
  }
  result.intervals = static_cast<int>(segments.size());
  return result;
}

//! n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);
};

inline GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n) {
  if (n < 1) throw UsageError("GaussLegendre: need at least one node");
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace ubdm::quad
