#pragma once

#include <cstddef>
#include <functional>

#include "toda/biexp.hpp"

namespace toda {

/// Integrand for plane_integral: log of a positive density at z != 0.
using LogDensity = std::function<double(complex)>;

struct PlaneQuadratureOptions {
  double tol = 1e-9;               // relative target for the total
  std::size_t theta_nodes = 64;    // initial trapezoid nodes, doubled on demand
  std::size_t max_theta_nodes = 4096;
  double rate_inner = 2.0;         // decay of r^2 density as s -> -inf
  double rate_outer = 2.0;         // decay as s -> +inf
  double s_limit = 700.0;          // hard bound on |s|
  unsigned max_depth = 15;         // Gauss-Kronrod bisection depth
};

struct PlaneQuadrature {
  double value = 0.0;
  double error_estimate = 0.0;     // radial + angular + tail
  double s_lo = 0.0;
  double s_hi = 0.0;
  double tail = 0.0;               // analytic tail contribution
  std::size_t theta_nodes = 0;
  std::size_t evaluations = 0;     // density evaluations
  bool converged = false;
};

/// int_{R^2} exp(log_density(z)) dA in s = log r: adaptive Gauss-Kronrod in s,
/// trapezoid in theta. The radial window is cut where the angular profile
/// falls below tol * 1e-3 of its peak, and the remainder is added as
/// g(edge) / rate using the supplied decay rates.
PlaneQuadrature plane_integral(const LogDensity& log_density, const PlaneQuadratureOptions& opt);

}  // namespace toda
