#ifndef VORTWAVE_NUMERICS_BVP_HPP
#define VORTWAVE_NUMERICS_BVP_HPP

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "vortwave/errors.hpp"
#include "vortwave/numerics/ode.hpp"

namespace vortwave::numerics {

/// Solution of -v'' + coeff(y) v = rhs(y) on [0, length] with Dirichlet data,
/// kept as the two dense initial-value shots it was superposed from:
/// v = particular + alpha * homogeneous, where particular(0) = left,
/// particular'(0) = 0 and homogeneous(0) = 0, homogeneous'(0) = 1.
class LinearBvpSolution {
 public:
  LinearBvpSolution() = default;
  LinearBvpSolution(Trajectory<4> shots, double length, double alpha)
      : shots_(std::move(shots)), length_(length), alpha_(alpha) {}

  double length() const { return length_; }
  double value(double y) const {
    const auto s = shots_(y);
    return s[0] + alpha_ * s[2];
  }
  double slope(double y) const {
    const auto s = shots_(y);
    return s[1] + alpha_ * s[3];
  }
  double slope_left() const { return shots_.front()[1] + alpha_ * shots_.front()[3]; }
  double slope_right() const { return shots_.back()[1] + alpha_ * shots_.back()[3]; }
  double value_right() const { return shots_.back()[0] + alpha_ * shots_.back()[2]; }
  double homogeneous_right() const { return shots_.back()[2]; }

  /// Uniform samples y_i = i * length / (n - 1).
  std::vector<double> sample(std::size_t n) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double y = (n == 1) ? 0.0 : length_ * static_cast<double>(i) / static_cast<double>(n - 1);
      out[i] = (i + 1 == n) ? value_right() : value(y);
    }
    return out;
  }

 private:
  Trajectory<4> shots_;
  double length_ = 0.0;
  double alpha_ = 0.0;
};

/// Solves -v'' + coeff(y) v = rhs(y), v(0) = left_value, v(length) = right_value.
/// Throws ResonanceError when the homogeneous shot (v(0)=0, v'(0)=1) vanishes
/// at the right end relative to its size, i.e. the Dirichlet problem is
/// degenerate.
template <class Coeff, class Rhs>
LinearBvpSolution shoot_linear_bvp(const Coeff& coeff, const Rhs& rhs, double length,
                                   double left_value, double right_value,
                                   const IvpOptions& opt = {}) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("boundary-value interval length must be positive and finite");
  }
  auto system = [&](double y, const State<4>& v) {
    const double c = coeff(y);
    const double f = rhs(y);
    return State<4>{v[1], c * v[0] - f, v[3], c * v[2]};
  };
  double scale = 0.0;
  auto track = [&scale](double, const State<4>&, double, const State<4>& v) {
    scale = std::max(scale, std::abs(v[2]));
    return true;
  };
  Trajectory<4> shots = solve_ivp<4>(system, State<4>{left_value, 0.0, 0.0, 1.0}, 0.0, length, opt, track);
  const double vh_end = shots.back()[2];
  scale = std::max(scale, length);
  if (!(std::abs(vh_end) > 1e-10 * scale)) {
    std::ostringstream os;
    os << "boundary-value problem is degenerate: homogeneous solution at the right end is "
       << vh_end << " (scale " << scale << ")";
    throw ResonanceError(os.str(), vh_end);
  }
  const double alpha = (right_value - shots.back()[0]) / vh_end;
  return LinearBvpSolution(std::move(shots), length, alpha);
}

}  // namespace vortwave::numerics

#endif  // VORTWAVE_NUMERICS_BVP_HPP
