#include "toda/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace toda {

namespace {

constexpr double kScanStep = 0.5;
constexpr double kScanHalfWidth = 60.0;
constexpr double kCutFactor = 1e-3;

class Profile {
 public:
  Profile(const LogDensity& f, std::size_t nodes) : f_(f), nodes_(nodes) {
    for (std::size_t j = 0; j < nodes; ++j) {
      phase_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes)));
    }
  }

  /// int_0^{2 pi} r^2 density(r e^{i theta}) d theta at r = e^s.
  double operator()(double s) {
    const double r = std::exp(s);
    double sum = 0.0;
    for (const complex& p : phase_) sum += std::exp(2.0 * s + f_(r * p));
    evaluations_ += nodes_;
    return sum * 2.0 * std::numbers::pi / static_cast<double>(nodes_);
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const LogDensity& f_;
  std::size_t nodes_;
  std::vector<complex> phase_;
  std::size_t evaluations_ = 0;
};

struct Window {
  double lo, hi, g_lo, g_hi;
};

/// Peak from a coarse scan, then outward walk until two consecutive samples sit
/// below the cut.
Window find_window(Profile& g, const PlaneQuadratureOptions& opt) {
  double peak = 0.0, s_peak = 0.0;
  for (double s = -kScanHalfWidth; s <= kScanHalfWidth; s += kScanStep) {
    const double v = g(s);
    if (v > peak) {
      peak = v;
      s_peak = s;
    }
  }
  const double cut = opt.tol * kCutFactor * peak;
  auto walk = [&](double dir, double& g_edge) {
    double s = s_peak;
    int below = 0;
    while (std::abs(s) < opt.s_limit) {
      s += dir * kScanStep;
      g_edge = g(s);
      below = g_edge < cut ? below + 1 : 0;
      if (below == 2) return s;
    }
    return s;
  };
  Window w{};
  w.lo = walk(-1.0, w.g_lo);
  w.hi = walk(1.0, w.g_hi);
  return w;
}

}  // namespace

PlaneQuadrature plane_integral(const LogDensity& log_density, const PlaneQuadratureOptions& opt) {
  using boost::math::quadrature::gauss_kronrod;
  PlaneQuadrature out;
  Profile scan(log_density, std::max<std::size_t>(16, opt.theta_nodes / 4));
  const Window w = find_window(scan, opt);
  out.s_lo = w.lo;
  out.s_hi = w.hi;
  out.evaluations = scan.evaluations();
  const bool window_ok = std::abs(w.lo) < opt.s_limit && std::abs(w.hi) < opt.s_limit;

  double previous = 0.0;
  double radial_error = 0.0;
  double angular_change = 0.0;
  for (std::size_t nodes = opt.theta_nodes; nodes <= opt.max_theta_nodes; nodes *= 2) {
    Profile g(log_density, nodes);
    double err = 0.0;
    const double core = gauss_kronrod<double, 31>::integrate([&g](double s) { return g(s); }, w.lo, w.hi, opt.max_depth, opt.tol * 0.1, &err);
    out.tail = g(w.lo) / opt.rate_inner + g(w.hi) / opt.rate_outer;
    out.evaluations += g.evaluations();
    const double value = core + out.tail;
    radial_error = err;
    out.theta_nodes = nodes;
    out.value = value;
    if (nodes > opt.theta_nodes) {
      angular_change = std::abs(value - previous);
      if (angular_change <= 0.5 * opt.tol * std::abs(value)) break;
    }
    previous = value;
  }
  out.error_estimate = radial_error + angular_change + 0.1 * out.tail;
  out.converged = window_ok && out.theta_nodes <= opt.max_theta_nodes &&
                  angular_change <= 0.5 * opt.tol * std::abs(out.value) &&
                  out.error_estimate <= opt.tol * std::abs(out.value);
  return out;
}

}  // namespace toda
