#include "toda/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toda {

void validate(const GridSpec& spec) {
  if (!(spec.r0 > 0.0) || !(spec.r1 >= spec.r0) || !std::isfinite(spec.r1)) {
    throw std::invalid_argument("grid: need 0 < r0 <= r1 (the origin is excluded)");
  }
  if (spec.nr == 0 || spec.ntheta == 0) throw std::invalid_argument("grid: counts must be positive");
  if (spec.nr == 1 && spec.r0 != spec.r1) throw std::invalid_argument("grid: nr = 1 needs r0 = r1");
}

std::vector<double> log_radii(double r0, double r1, std::size_t nr) {
  std::vector<double> r(nr);
  if (nr == 1) {
    r[0] = r0;
    return r;
  }
  const double a = std::log(r0);
  const double b = std::log(r1);
  for (std::size_t i = 0; i < nr; ++i) r[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(nr - 1));
  r.front() = r0;
  r.back() = r1;
  return r;
}

std::vector<double> grid_angles(std::size_t ntheta) {
  std::vector<double> t(ntheta);
  for (std::size_t j = 0; j < ntheta; ++j) {
    t[j] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j + 1) / static_cast<double>(ntheta);
  }
  return t;
}

std::vector<complex> make_grid(const GridSpec& spec) {
  validate(spec);
  std::vector<complex> pts;
  pts.reserve(spec.nr * spec.ntheta);
  const auto angles = grid_angles(spec.ntheta);
  for (double r : log_radii(spec.r0, spec.r1, spec.nr)) {
    for (double t : angles) pts.push_back(std::polar(r, t));
  }
  return pts;
}

}  // namespace toda
