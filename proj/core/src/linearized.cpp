#include "toda/linearized.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "toda/params.hpp"
#include "toda/parallel.hpp"

namespace toda {

namespace {

std::vector<AtomPtr> solution_atoms(const TodaSolution& sol) {
  std::vector<AtomPtr> atoms;
  for (std::size_t k = 1; k <= sol.n() + 1; ++k) atoms.push_back(make_atom(sol.det(k), sol.gamma()));
  return atoms;
}

KernelElement build_kernel(const TodaSolution& sol, const std::vector<AtomPtr>& atoms, const Eigen::MatrixXcd& b) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  KernelElement k;
  k.b = b;
  k.Phi.push_back(RationalExpr(f_from_moments(sol.params.data, b)).times_atom(atoms[0], -1));
  RationalExpr prev(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const RationalExpr& cur = k.Phi[i - 1];
    RationalExpr lap = rational_diff(rational_diff(cur, Dir::z, g), Dir::zbar, g).times_atom(atoms[i - 1], 2);
    if (i >= 2) lap = lap.times_atom(atoms[i - 2], -1);
    lap = lap.times_atom(atoms[i], -1);
    RationalExpr next = cur.scaled(2.0) - prev + lap;
    prev = cur;
    k.Phi.push_back(std::move(next));
  }
  return k;
}

double sup_abs(const CompiledRational& r, const std::vector<complex>& points) {
  std::vector<double> v(points.size());
  parallel_for(points.size(), [&](std::size_t p) { v[p] = std::abs(r(points[p])); });
  return points.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

void check_direction(const TodaParams& params, const std::vector<double>& direction) {
  const std::size_t size = chart_coordinates(params).size();
  if (direction.size() != size) {
    throw InvalidInput("chart direction", "expected " + std::to_string(size) + " components, got " +
                                              std::to_string(direction.size()));
  }
  for (double d : direction) {
    if (!std::isfinite(d)) throw InvalidInput("chart direction", "direction components must be finite");
  }
}

std::size_t auto_slot(const TodaParams& params) { return params.auto_slot ? *params.auto_slot : params.n(); }

}  // namespace

KernelElement kernel_from_moments(const TodaSolution& sol, const Eigen::MatrixXcd& b) {
  const std::size_t n = sol.n();
  for (std::size_t i = 1; i <= n; ++i) {
    if (sol.gamma().value(i) != 0.0) throw std::invalid_argument("kernel_from_moments: requires gamma = 0");
  }
  const auto size = static_cast<Eigen::Index>(n + 1);
  if (b.rows() != size || b.cols() != size) throw std::invalid_argument("kernel_from_moments: b must be (n+1)x(n+1)");
  if ((b - b.adjoint()).norm() > 1e-12 * std::max(1.0, b.norm())) {
    throw std::invalid_argument("kernel_from_moments: b must be hermitian");
  }
  return build_kernel(sol, solution_atoms(sol), b);
}

std::vector<RationalExpr> phi_from_Phi(const KernelElement& k) {
  const std::size_t n = k.Phi.size() - 1;
  std::vector<RationalExpr> phi;
  for (std::size_t i = 0; i < n; ++i) {
    RationalExpr v = k.Phi[i].scaled(2.0);
    if (i >= 1) v = v - k.Phi[i - 1];
    if (i + 1 < n) v = v - k.Phi[i + 1];
    phi.push_back(std::move(v));
  }
  return phi;
}

double closing_residual(const TodaSolution& sol, const KernelElement& k, const std::vector<complex>& points) {
  const Gamma& g = sol.gamma();
  const std::size_t n = sol.n();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, sup_abs(CompiledRational(k.Phi[i], g), points));
  const double top = sup_abs(CompiledRational(k.Phi[n], g), points);
  if (scale == 0.0) return top;
  return top / scale;
}

double linearized_residual(const TodaSolution& sol, const KernelElement& k, const std::vector<complex>& points) {
  const Gamma& g = sol.gamma();
  const std::size_t n = sol.n();
  const auto phi = phi_from_Phi(k);
  std::vector<CompiledRational> val, lap;
  for (const auto& p : phi) {
    val.emplace_back(p, g);
    lap.emplace_back(rational_diff(rational_diff(p, Dir::z, g), Dir::zbar, g).scaled(4.0), g);
  }
  const auto& A = sol.params.data.cartan.A;
  std::vector<double> res(points.size(), 0.0), scale(points.size(), 0.0);
  parallel_for(points.size(), [&](std::size_t p) {
    const complex z = points[p];
    const auto f = sol.fields(z);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = val[j](z).real();
      scale[p] = std::max(scale[p], std::abs(f.eu[j] * v[j]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      double r = lap[i](z).real();
      for (std::size_t j = 0; j < n; ++j) r += A[i][j] * f.eu[j] * v[j];
      res[p] = std::max(res[p], std::abs(r));
    }
  });
  const double s = *std::max_element(scale.begin(), scale.end());
  const double r = *std::max_element(res.begin(), res.end());
  return s == 0.0 ? r : r / s;
}

std::vector<Eigen::MatrixXcd> hermitian_basis(std::size_t size) {
  const auto m = static_cast<Eigen::Index>(size);
  std::vector<Eigen::MatrixXcd> out;
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(m, m);
    e(k, k) = 1.0;
    out.push_back(e);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = k + 1; l < m; ++l) {
      Eigen::MatrixXcd re = Eigen::MatrixXcd::Zero(m, m);
      re(k, l) = re(l, k) = s;
      out.push_back(re);
      Eigen::MatrixXcd im = Eigen::MatrixXcd::Zero(m, m);
      im(k, l) = complex(0.0, s);
      im(l, k) = complex(0.0, -s);
      out.push_back(im);
    }
  }
  return out;
}

ClosedKernel closed_kernel(const TodaSolution& sol, const std::vector<complex>& points, double cutoff) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  for (std::size_t i = 1; i <= n; ++i) {
    if (g.value(i) != 0.0) throw std::invalid_argument("closed_kernel: requires gamma = 0");
  }
  const auto atoms = solution_atoms(sol);
  const auto basis = hermitian_basis(n + 1);
  const auto rows = static_cast<Eigen::Index>(2 * points.size());
  Eigen::MatrixXd closing(rows, static_cast<Eigen::Index>(basis.size()));
  parallel_for(basis.size(), [&](std::size_t c) {
    const KernelElement k = build_kernel(sol, atoms, basis[c]);
    const CompiledRational top(k.Phi[n], g);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const complex v = top(points[p]);
      closing(static_cast<Eigen::Index>(2 * p), static_cast<Eigen::Index>(c)) = v.real();
      closing(static_cast<Eigen::Index>(2 * p + 1), static_cast<Eigen::Index>(c)) = v.imag();
    }
  });
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(closing, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  ClosedKernel out;
  const double top = sv.size() ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    out.closing_singular_values.push_back(sv(i));
    if (sv(i) > cutoff * top) ++out.closing_rank;
  }
  const Eigen::MatrixXd& V = svd.matrixV();
  for (Eigen::Index c = static_cast<Eigen::Index>(out.closing_rank); c < V.cols(); ++c) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
    for (Eigen::Index r = 0; r < V.rows(); ++r) b += V(r, c) * basis[static_cast<std::size_t>(r)];
    out.basis.push_back(b);
  }
  out.elements.resize(out.basis.size());
  parallel_for(out.basis.size(), [&](std::size_t i) { out.elements[i] = build_kernel(sol, atoms, out.basis[i]); });
  return out;
}

std::vector<std::string> chart_coordinates(const TodaParams& params) {
  std::vector<std::string> out;
  const std::size_t skip = auto_slot(params);
  for (std::size_t k = 0; k <= params.n(); ++k) {
    if (k != skip) out.push_back("log lambda_" + std::to_string(k));
  }
  for (const auto& [i, j] : admissible_support(params.data)) {
    const std::string key = std::to_string(i) + std::to_string(j);
    out.push_back("re c_" + key);
    out.push_back("im c_" + key);
  }
  return out;
}

TodaParams perturb(const TodaParams& params, const std::vector<double>& direction, double t) {
  check_direction(params, direction);
  const std::size_t n = params.n();
  const std::size_t skip = auto_slot(params);
  std::vector<std::optional<double>> lambda(n + 1);
  std::size_t pos = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == skip) continue;
    lambda[k] = params.lambda[k] * std::exp(t * direction[pos++]);
  }
  std::map<CIndex, complex> c;
  for (const auto& key : admissible_support(params.data)) {
    c[key] = params.c_at(key.first, key.second) + t * complex(direction[pos], direction[pos + 1]);
    pos += 2;
  }
  return make_params(params.data, lambda, c);
}

TangentField tangent_fd(const TodaParams& params, const std::vector<double>& direction, double h,
                        const std::vector<complex>& points, FdLaplacian mode) {
  if (!(h > 0.0)) throw InvalidInput("chart direction", "step h must be positive");
  const std::size_t n = params.n();
  const TodaSolution plus = build_solution(perturb(params, direction, h));
  const TodaSolution minus = build_solution(perturb(params, direction, -h));
  const TodaSolution base = build_solution(params);
  const auto& A = params.data.cartan.A;
  TangentField t;
  t.direction = direction;
  t.h = h;
  t.mode = mode;
  t.points = points;
  t.phi.assign(points.size(), std::vector<double>(n));
  t.lap_phi.assign(points.size(), std::vector<double>(n));
  t.eu.assign(points.size(), std::vector<double>(n));
  auto phi_at = [&](complex z) {
    const auto up = plus.eval.u_values(z);
    const auto um = minus.eval.u_values(z);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (up[i] - um[i]) / (2.0 * h);
    return v;
  };
  parallel_for(points.size(), [&](std::size_t p) {
    const complex z = points[p];
    t.eu[p] = base.fields(z).eu;
    if (mode == FdLaplacian::exact) {
      const auto fp = plus.fields(z);
      const auto fm = minus.fields(z);
      for (std::size_t i = 0; i < n; ++i) {
        t.phi[p][i] = (fp.u[i] - fm.u[i]) / (2.0 * h);
        double lap = 0.0;
        for (std::size_t j = 0; j < n; ++j) lap += A[i][j] * (fp.lapU[j] - fm.lapU[j]);
        t.lap_phi[p][i] = lap / (2.0 * h);
      }
      return;
    }
    t.phi[p] = phi_at(z);
    const double d = 1e-3 * std::abs(z);
    const complex shifts[] = {d, -d, complex(0.0, d), complex(0.0, -d)};
    std::vector<double> sum(n, 0.0);
    for (const complex s : shifts) {
      const auto v = phi_at(z + s);
      for (std::size_t i = 0; i < n; ++i) sum[i] += v[i];
    }
    for (std::size_t i = 0; i < n; ++i) t.lap_phi[p][i] = (sum[i] - 4.0 * t.phi[p][i]) / (d * d);
  });
  return t;
}

std::vector<double> fd_residual(const CartanData& cartan, const TangentField& t) {
  const std::size_t n = cartan.n;
  std::vector<double> res(n, 0.0);
  double scale = 0.0;
  for (std::size_t p = 0; p < t.points.size(); ++p) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(t.eu[p][j] * t.phi[p][j]));
    for (std::size_t i = 0; i < n; ++i) {
      double r = t.lap_phi[p][i];
      for (std::size_t j = 0; j < n; ++j) r += cartan.A[i][j] * t.eu[p][j] * t.phi[p][j];
      res[i] = std::max(res[i], std::abs(r));
    }
  }
  if (scale > 0.0) {
    for (double& r : res) r /= scale;
  }
  return res;
}

Eigen::VectorXd flatten(const TangentField& t) {
  const std::size_t n = t.phi.empty() ? 0 : t.phi[0].size();
  Eigen::VectorXd v(static_cast<Eigen::Index>(t.phi.size() * n));
  for (std::size_t p = 0; p < t.phi.size(); ++p) {
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(p * n + i)) = t.phi[p][i];
  }
  return v;
}

Eigen::VectorXd flatten(const TodaSolution& sol, const KernelElement& k, const std::vector<complex>& points) {
  const std::size_t n = sol.n();
  std::vector<CompiledRational> phi;
  for (const auto& p : phi_from_Phi(k)) phi.emplace_back(p, sol.gamma());
  Eigen::VectorXd v(static_cast<Eigen::Index>(points.size() * n));
  parallel_for(points.size(), [&](std::size_t p) {
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(p * n + i)) = phi[i](points[p]).real();
  });
  return v;
}

std::size_t numerical_rank(const Eigen::MatrixXd& m, double cutoff, std::vector<double>* singular_values) {
  Eigen::MatrixXd cols = m;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    const double norm = cols.col(c).norm();
    if (norm > 0.0) cols.col(c) /= norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols);
  const auto& sv = svd.singularValues();
  std::size_t rank = 0;
  if (singular_values) singular_values->clear();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (singular_values) singular_values->push_back(sv(i));
    if (sv(i) > cutoff * sv(0)) ++rank;
  }
  return rank;
}

double projection_residual(const Eigen::MatrixXd& basis, const Eigen::VectorXd& v) {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(basis, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  }
  const Eigen::MatrixXd U = svd.matrixU().leftCols(rank);
  return (v - U * (U.transpose() * v)).norm() / norm;
}

TangentReport dimension_check(const TodaParams& params, const DimensionOptions& opt) {
  const std::size_t n = params.n();
  TangentReport r;
  r.coordinates = chart_coordinates(params);
  r.target = dimension(params.data);
  r.cutoff = opt.cutoff;
  r.h = opt.h;
  const std::size_t N = r.coordinates.size();
  const auto points = make_grid(opt.grid);
  GridSpec fine = opt.grid;
  fine.nr *= 2;
  fine.ntheta *= 2;
  const auto fine_points = make_grid(fine);
  r.samples = points.size() * n;

  std::vector<TangentField> fields(N);
  std::vector<double> fine_sup(N, 0.0);
  parallel_for(N, [&](std::size_t k) {
    std::vector<double> e(N, 0.0);
    e[k] = 1.0;
    fields[k] = tangent_fd(params, e, opt.h, points);
    const TodaSolution plus = build_solution(perturb(params, e, opt.h));
    const TodaSolution minus = build_solution(perturb(params, e, -opt.h));
    for (const complex z : fine_points) {
      const auto up = plus.eval.u_values(z);
      const auto um = minus.eval.u_values(z);
      for (std::size_t i = 0; i < n; ++i) fine_sup[k] = std::max(fine_sup[k], std::abs(up[i] - um[i]) / (2.0 * opt.h));
    }
  });

  Eigen::MatrixXd samples(static_cast<Eigen::Index>(r.samples), static_cast<Eigen::Index>(N));
  r.residual_sup.assign(n, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    samples.col(static_cast<Eigen::Index>(k)) = flatten(fields[k]);
    r.sup_phi = std::max(r.sup_phi, samples.col(static_cast<Eigen::Index>(k)).cwiseAbs().maxCoeff());
    r.sup_phi_refined = std::max(r.sup_phi_refined, fine_sup[k]);
    const auto res = fd_residual(params.data.cartan, fields[k]);
    for (std::size_t i = 0; i < n; ++i) r.residual_sup[i] = std::max(r.residual_sup[i], res[i]);
  }
  r.rank = N ? numerical_rank(samples, opt.cutoff, &r.singular_values) : 0;
  r.bounded = std::isfinite(r.sup_phi_refined) && r.sup_phi_refined <= 2.0 * r.sup_phi;
  r.pass = r.rank == r.target && r.bounded && r.samples >= 4 * r.target;
  return r;
}

}  // namespace toda
