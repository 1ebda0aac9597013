#pragma once

#include <span>
#include <vector>

namespace ubdm {

//! Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson
//! slopes). Monotone data stays monotone and non-negative data stays
//! non-negative between knots. Outside [x.front(), x.back()] it returns 0.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  //! x strictly increasing, at least two knots.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  std::span<const double> knots() const { return x_; }
  std::span<const double> values() const { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace ubdm
