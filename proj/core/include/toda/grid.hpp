#pragma once

#include <cstddef>
#include <vector>

#include "toda/biexp.hpp"

namespace toda {

/// nr radii log-spaced over [r0, r1] times ntheta angles in (-pi, pi].
struct GridSpec {
  double r0 = 1e-2;
  double r1 = 1e2;
  std::size_t nr = 8;
  std::size_t ntheta = 16;
};

std::vector<double> log_radii(double r0, double r1, std::size_t nr);
/// theta_j = -pi + 2 pi (j+1) / ntheta, j = 0..ntheta-1.
std::vector<double> grid_angles(std::size_t ntheta);
/// Radius-major ordering: point (a, t) has index a * ntheta + t.
std::vector<complex> make_grid(const GridSpec& spec);

/// Throws std::invalid_argument on r0 <= 0, r1 < r0 or zero counts.
void validate(const GridSpec& spec);

}  // namespace toda
