#ifndef VORTWAVE_HODOGRAPH_HPP
#define VORTWAVE_HODOGRAPH_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "vortwave/bernoulli.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/linearwave.hpp"
#include "vortwave/numerics/roots.hpp"
#include "vortwave/stream.hpp"

namespace vortwave {

/// Height h(q, p) on the strip 0 <= p <= 1, q = x, p = psi.
class HodographField {
 public:
  HodographField(std::vector<double> q, std::vector<double> p, std::vector<double> h, double r)
      : q_(std::move(q)), p_(std::move(p)), h_(std::move(h)), r_(r) {
    if (q_.size() < 3 || p_.size() < 7) throw ValidationError("hodograph grid needs >= 3 columns and >= 7 rows");
    if (h_.size() != q_.size() * p_.size()) throw ValidationError("hodograph samples do not match the grid");
    for (std::size_t i = 0; i + 1 < q_.size(); ++i) {
      if (!(q_[i + 1] > q_[i])) throw ValidationError("q grid must be strictly increasing");
    }
    if (p_.front() != 0.0 || p_.back() != 1.0) throw ValidationError("p grid must span [0, 1]");
    delta_prime_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q_.size(); ++i) {
      for (std::size_t j = 0; j + 1 < p_.size(); ++j) {
        const double hp = (at(i, j + 1) - at(i, j)) / (p_[j + 1] - p_[j]);
        delta_prime_ = std::min(delta_prime_, hp);
      }
    }
  }

  std::size_t nq() const { return q_.size(); }
  std::size_t np() const { return p_.size(); }
  const std::vector<double>& q() const { return q_; }
  const std::vector<double>& p() const { return p_; }
  const std::vector<double>& values() const { return h_; }
  double at(std::size_t i, std::size_t j) const { return h_[i * p_.size() + j]; }
  double r() const { return r_; }
  /// min over the grid of the forward difference quotient in p.
  double delta_prime() const { return delta_prime_; }

 private:
  std::vector<double> q_;
  std::vector<double> p_;
  std::vector<double> h_;
  double r_;
  double delta_prime_;
};

namespace detail {

inline std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = (i + 1 == n) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

// H(p_j; s) accumulated panel by panel; the last value is d(s).
inline std::vector<double> profile_on_grid(const Flow& flow, double s, const std::vector<double>& p) {
  std::vector<double> H(p.size(), 0.0);
  for (std::size_t j = 1; j < p.size(); ++j) {
    H[j] = H[j - 1] + radicand_integral(flow, s, p[j - 1], p[j], 0.5);
  }
  return H;
}

// Phi(p_j; s) accumulated the same way.
inline std::vector<double> phi_on_grid(const Flow& flow, double s, const std::vector<double>& p) {
  require_admissible(flow, s, true);
  std::vector<double> F(p.size(), 0.0);
  for (std::size_t j = 1; j < p.size(); ++j) {
    F[j] = F[j - 1] + radicand_integral(flow, s, p[j - 1], p[j], 1.5);
  }
  return F;
}

// Monotone cubic (Fritsch-Carlson) interpolation of y(x) at xq.
inline double pchip(const std::vector<double>& x, const std::vector<double>& y, double xq) {
  const std::size_t n = x.size();
  auto k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), xq) - x.begin());
  k = std::clamp<std::size_t>(k, 1, n - 1) - 1;
  auto secant = [&](std::size_t i) { return (y[i + 1] - y[i]) / (x[i + 1] - x[i]); };
  auto slope = [&](std::size_t i) {
    if (i == 0) return secant(0);
    if (i == n - 1) return secant(n - 2);
    const double a = secant(i - 1);
    const double b = secant(i);
    if (a * b <= 0.0) return 0.0;
    const double ha = x[i] - x[i - 1];
    const double hb = x[i + 1] - x[i];
    const double wa = 2.0 * hb + ha;
    const double wb = hb + 2.0 * ha;
    return (wa + wb) / (wa / a + wb / b);
  };
  const double h = x[k + 1] - x[k];
  const double t = (xq - x[k]) / h;
  const double m0 = slope(k) * h;
  const double m1 = slope(k + 1) * h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y[k] + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y[k + 1] + (t3 - t2) * m1;
}

// Second-order derivative of samples v (stride apart in memory) at index k
// of n equally spaced points: centred inside, one-sided at the ends.
inline double derivative2(const std::vector<double>& v, std::size_t base, std::size_t stride, std::size_t k,
                          std::size_t n, double h) {
  auto at = [&](std::size_t m) { return v[base + m * stride]; };
  // Written in differences so that constant data gives exactly zero.
  if (k == 0) return (4.0 * (at(1) - at(0)) - (at(2) - at(0))) / (2.0 * h);
  if (k + 1 == n) return (4.0 * (at(n - 1) - at(n - 2)) - (at(n - 1) - at(n - 3))) / (2.0 * h);
  return (at(k + 1) - at(k - 1)) / (2.0 * h);
}

inline bool uniform(const std::vector<double>& g) {
  const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (std::abs(g[i + 1] - g[i] - h) > 1e-9 * std::abs(h)) return false;
  }
  return true;
}

}  // namespace detail

/// Exact stream on the strip: h(q, p) = H(p; s) in every column.
inline HodographField to_strip(const StreamSolution& stream, std::size_t nq = 129, std::size_t np = 129,
                               double q_length = 1.0) {
  if (!stream.has_profile()) throw ValidationError("stream has no profile H(p); build it from s, not from a shot");
  const auto q = detail::uniform_grid(0.0, q_length, nq);
  const auto p = detail::uniform_grid(0.0, 1.0, np);
  const auto H = detail::profile_on_grid(stream.flow(), stream.s(), p);
  std::vector<double> h;
  h.reserve(nq * np);
  for (std::size_t i = 0; i < nq; ++i) h.insert(h.end(), H.begin(), H.end());
  return HodographField(q, p, std::move(h), stream.r());
}

/// Inverts y -> psi(x, y) column by column onto a uniform p-grid. Roots are
/// located on the wave's shared evaluator inside the grid bracket; columns
/// where that fails fall back to monotone interpolation of the samples.
inline HodographField to_strip(const WaveField& field, std::size_t np = 0) {
  if (np == 0) np = field.ny();
  const std::size_t nx = field.nx();
  const std::size_t ny = field.ny();
  const auto& model = field.model();
  const auto p = detail::uniform_grid(0.0, 1.0, np);
  std::vector<double> h(nx * np, 0.0);
  std::vector<double> col_psi(ny);
  std::vector<double> col_y(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = field.x()[i];
    const double eta = field.eta()[i];
    for (std::size_t j = 0; j < ny; ++j) {
      col_psi[j] = field.psi(i, j);
      col_y[j] = field.y(i, j);
      if (j > 0 && !(col_psi[j] > col_psi[j - 1])) {
        std::ostringstream os;
        os.precision(10);
        os << "psi is not strictly increasing in column " << i << " (x = " << x << ") on y in [" << col_y[j - 1]
           << ", " << col_y[j] << "]";
        throw UnidirectionalityError(os.str(), i, col_y[j - 1], col_y[j]);
      }
    }
    auto g = [&model, x](double y) { return model.evaluate(x, y).psi; };
    for (std::size_t j = 1; j < np; ++j) {
      const double target = p[j];
      auto k = static_cast<std::size_t>(std::lower_bound(col_psi.begin(), col_psi.end(), target) - col_psi.begin());
      k = std::clamp<std::size_t>(k, 1, ny - 1);
      const double lo = col_y[k - 1];
      const double hi = col_y[k];
      const double flo = g(lo) - target;
      const double fhi = g(hi) - target;
      double y;
      if (fhi == 0.0) {
        y = hi;
      } else if (flo * fhi < 0.0 || flo == 0.0) {
        y = numerics::find_root([&](double v) { return g(v) - target; }, numerics::Bracket{lo, hi, flo, fhi}, 1e-15);
      } else if (j + 1 == np && std::abs(fhi) <= 1e-10) {
        y = eta;
      } else {
        y = detail::pchip(col_psi, col_y, target);
      }
      h[i * np + j] = y;
    }
  }
  HodographField hf(field.x(), p, std::move(h), field.r());
  if (!(hf.delta_prime() > 0.0)) {
    throw UnidirectionalityError("h_p is not positive on the strip", 0, 0.0, 0.0);
  }
  return hf;
}

/// eta(q) = h(q, 1).
inline std::vector<double> recover_eta(const HodographField& hf) {
  std::vector<double> eta(hf.nq());
  for (std::size_t i = 0; i < hf.nq(); ++i) eta[i] = hf.at(i, hf.np() - 1);
  return eta;
}

struct ResidualReport {
  std::vector<double> q;
  std::vector<double> p;  // empty for surface residuals
  std::vector<double> values;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double q_at_max = 0.0;
  double p_at_max = 1.0;
  std::string stencil;
};

/// (1 + h_q^2) / h_p^2 + 2 h - 3 r at p = 1. h_p by a one-sided 6th-order
/// stencil, h_q centred (one-sided at the q ends).
inline ResidualReport bernoulli_residual(const HodographField& hf, double r) {
  const std::size_t nq = hf.nq();
  const std::size_t np = hf.np();
  if (!detail::uniform(hf.p()) || !detail::uniform(hf.q())) throw ValidationError("residuals need uniform grids");
  const double dp = hf.p()[1] - hf.p()[0];
  const double dq = hf.q()[1] - hf.q()[0];
  ResidualReport res;
  res.stencil = "h_p: one-sided 6th order at p = 1; h_q: centred 2nd order, one-sided at q ends";
  res.q = hf.q();
  res.values.resize(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    double col[7];
    for (std::size_t k = 0; k < 7; ++k) col[k] = hf.at(i, np - 1 - k);
    const double hp = detail::backward_derivative6(col, dp);
    const double hq = detail::derivative2(hf.values(), np - 1, np, i, nq, dq);
    const double h = hf.at(i, np - 1);
    const double v = (1.0 + hq * hq) / (hp * hp) + 2.0 * h - 3.0 * r;
    res.values[i] = v;
    res.mean_abs += std::abs(v);
    if (std::abs(v) > res.max_abs) {
      res.max_abs = std::abs(v);
      res.q_at_max = hf.q()[i];
    }
  }
  res.mean_abs /= static_cast<double>(nq);
  return res;
}

inline ResidualReport bernoulli_residual(const HodographField& hf) { return bernoulli_residual(hf, hf.r()); }

/// Interior residual of [h_q/h_p]_q - [(1 + h_q^2)/(2 h_p^2) + Omega(p)]_p,
/// with fluxes at half nodes (compact second-order nested differences).
inline ResidualReport field_equation_residual(const HodographField& hf, const VorticityDistribution& dist) {
  const std::size_t nq = hf.nq();
  const std::size_t np = hf.np();
  if (!detail::uniform(hf.p()) || !detail::uniform(hf.q())) throw ValidationError("residuals need uniform grids");
  const double dp = hf.p()[1] - hf.p()[0];
  const double dq = hf.q()[1] - hf.q()[0];
  const auto& h = hf.values();
  auto H = [&](std::size_t i, std::size_t j) { return h[i * np + j]; };
  auto hq_node = [&](std::size_t i, std::size_t j) { return detail::derivative2(h, j, np, i, nq, dq); };
  auto hp_node = [&](std::size_t i, std::size_t j) { return detail::derivative2(h, i * np, 1, j, np, dp); };
  // q-flux h_q/h_p at (i + 1/2, j).
  auto flux_q = [&](std::size_t i, std::size_t j) {
    const double hq = (H(i + 1, j) - H(i, j)) / dq;
    const double hp = 0.5 * (hp_node(i, j) + hp_node(i + 1, j));
    return hq / hp;
  };
  // p-flux (1 + h_q^2)/(2 h_p^2) + Omega(p) at (i, j + 1/2).
  auto flux_p = [&](std::size_t i, std::size_t j) {
    const double hp = (H(i, j + 1) - H(i, j)) / dp;
    const double hq = 0.5 * (hq_node(i, j) + hq_node(i, j + 1));
    const double pm = 0.5 * (hf.p()[j] + hf.p()[j + 1]);
    return (1.0 + hq * hq) / (2.0 * hp * hp) + dist.Omega(pm);
  };
  ResidualReport res;
  res.stencil = "compact centred 2nd order, fluxes at half nodes";
  res.q = hf.q();
  res.p = hf.p();
  res.values.assign(nq * np, 0.0);
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < nq; ++i) {
    for (std::size_t j = 1; j + 1 < np; ++j) {
      const double v = (flux_q(i, j) - flux_q(i - 1, j)) / dq - (flux_p(i, j) - flux_p(i, j - 1)) / dp;
      res.values[i * np + j] = v;
      res.mean_abs += std::abs(v);
      ++count;
      if (std::abs(v) > res.max_abs) {
        res.max_abs = std::abs(v);
        res.q_at_max = hf.q()[i];
        res.p_at_max = hf.p()[j];
      }
    }
  }
  if (count > 0) res.mean_abs /= static_cast<double>(count);
  return res;
}

struct WheelerResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double discrepancy = 0.0;
  bool reduced = false;
  double phi1 = 0.0;
  /// [Phi(1; s) - 1] int w(q, 1) dq (zero in the reduced form).
  double surface_term = 0.0;
  double area_term = 0.0;
  double window_length = 0.0;
  double head_of_s = 0.0;
  std::vector<std::string> warnings;
};

/// Integral identity between the field h and the stream H(.; s) over the
/// window [q_lo, q_hi] (grid nodes), with w = h - H(.; s). Trapezoid rule on
/// the field's own grid. At Phi(1; s) = 1 the surface term is dropped.
inline WheelerResult wheeler_identity(const HodographField& hf, const Flow& flow, double s, double q_lo, double q_hi) {
  const auto& q = hf.q();
  const auto& p = hf.p();
  const std::size_t nq = hf.nq();
  const std::size_t np = hf.np();
  if (!detail::uniform(p) || !detail::uniform(q)) throw ValidationError("wheeler identity needs uniform grids");
  if (!(q_hi > q_lo)) throw ValidationError("wheeler window must have q_lo < q_hi");
  auto node = [&](double v) -> std::size_t {
    const auto it = std::min_element(q.begin(), q.end(), [v](double a, double b) { return std::abs(a - v) < std::abs(b - v); });
    const double tol = 1e-9 * std::max(1.0, std::abs(v));
    if (std::abs(*it - v) > tol) {
      std::ostringstream os;
      os << "window end q = " << v << " is not a grid node";
      throw ValidationError(os.str());
    }
    return static_cast<std::size_t>(it - q.begin());
  };
  const std::size_t a = node(q_lo);
  const std::size_t b = node(q_hi);
  const double dq = q[1] - q[0];
  const double dp = p[1] - p[0];

  WheelerResult res;
  res.window_length = q[b] - q[a];
  const auto H = detail::profile_on_grid(flow, s, p);
  const auto Phi = detail::phi_on_grid(flow, s, p);
  std::vector<double> Hp(np);
  for (std::size_t j = 0; j < np; ++j) Hp[j] = profile_slope(flow, s, p[j]);
  res.phi1 = Phi.back();
  res.reduced = std::abs(res.phi1 - 1.0) <= 1e-8;
  res.head_of_s = (s * s - 2.0 * flow.classification().Omega_at_1 + 2.0 * H.back()) / 3.0;
  if (std::abs(res.head_of_s - hf.r()) > 1e-8 * std::max(1.0, hf.r())) {
    std::ostringstream os;
    os.precision(12);
    os << "R(s) = " << res.head_of_s << " differs from the field's head r = " << hf.r();
    res.warnings.push_back(os.str());
  }

  std::vector<double> w(nq * np);
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < np; ++j) w[i * np + j] = hf.at(i, j) - H[j];
  }
  auto trap_weight = [](std::size_t k, std::size_t lo, std::size_t hi) { return (k == lo || k == hi) ? 0.5 : 1.0; };

  if (!res.reduced) {
    double surface = 0.0;
    for (std::size_t i = a; i <= b; ++i) surface += trap_weight(i, a, b) * w[i * np + np - 1];
    res.surface_term = (res.phi1 - 1.0) * surface * dq;
  }
  double area = 0.0;
  for (std::size_t i = a; i <= b; ++i) {
    double column = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const double wq = detail::derivative2(w, j, np, i, nq, dq);
      const double wp = detail::derivative2(w, i * np, 1, j, np, dp);
      const double hp = detail::derivative2(hf.values(), i * np, 1, j, np, dp);
      const double g = (Hp[j] * Hp[j] * wq * wq + (2.0 * hp + Hp[j]) * wp * wp) / (2.0 * hp * hp);
      column += trap_weight(j, 0, np - 1) * g;
    }
    area += trap_weight(i, a, b) * column * dp;
  }
  res.area_term = area * dq;
  res.lhs = res.surface_term + res.area_term;

  auto flux_integral = [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const double hq = detail::derivative2(hf.values(), j, np, i, nq, dq);
      const double hp = detail::derivative2(hf.values(), i * np, 1, j, np, dp);
      acc += trap_weight(j, 0, np - 1) * hq / hp * Phi[j];
    }
    return acc * dp;
  };
  res.rhs = -(flux_integral(b) - flux_integral(a));
  res.discrepancy = std::abs(res.lhs - res.rhs);
  return res;
}

}  // namespace vortwave

#endif  // VORTWAVE_HODOGRAPH_HPP
