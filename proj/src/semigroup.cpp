#include "monorel/semigroup.hpp"

#include <cmath>

namespace monorel {

GridFunction zero_grid(int n) {
  if (n < 8) throw std::invalid_argument("GridFunction: need at least 8 nodes");
  return GridFunction{n, CVector::Zero(n)};
}

GridFunction grid_sample(const TestFunction1D& f, int n) {
  GridFunction g = zero_grid(n);
  for (int i = 0; i < n; ++i) g.values(i) = f(i * g.spacing());
  return g;
}

double trapezoid_norm_sq(const GridFunction& f) {
  const double dx = f.spacing();
  double s = 0.5 * (std::norm(f.values(0)) + std::norm(f.values(f.n - 1)));
  for (int i = 1; i < f.n - 1; ++i) s += std::norm(f.values(i));
  return s * dx;
}

double pair_energy(const GridFunction& u, const GridFunction& w) {
  return 0.5 * (trapezoid_norm_sq(u) + trapezoid_norm_sq(w));
}

namespace {

// Second-order first-derivative matrix: centered inside, one-sided ends.
Eigen::MatrixXd derivative_matrix(int n) {
  const double dx = 1.0 / (n - 1);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  d(0, 0) = -1.5 / dx;
  d(0, 1) = 2.0 / dx;
  d(0, 2) = -0.5 / dx;
  for (int i = 1; i < n - 1; ++i) {
    d(i, i - 1) = -0.5 / dx;
    d(i, i + 1) = 0.5 / dx;
  }
  d(n - 1, n - 3) = 0.5 / dx;
  d(n - 1, n - 2) = -2.0 / dx;
  d(n - 1, n - 1) = 1.5 / dx;
  return d;
}

}  // namespace

ResolventOperator::ResolventOperator(const BlockOperator& b, double tau, int n)
    : tau_(tau), n_(n) {
  if (tau <= 0) throw std::invalid_argument("ResolventOperator: tau must be positive");
  if (n < 8) throw std::invalid_argument("ResolventOperator: need at least 8 nodes");
  if (b.constraints.rows() != 2)
    throw SingularSystemError("boundary relation does not yield two constraints");
  const Eigen::MatrixXd d = derivative_matrix(n);
  Matrix sys = Matrix::Zero(2 * n, 2 * n);
  // Interior equations: u_i + tau (w')_i = f_i, w_i + tau (u')_i = g_i.
  for (int i = 1; i < n - 1; ++i) {
    sys(i, i) = 1.0;
    sys.row(i).segment(n, n) += tau * d.row(i).cast<Complex>();
    sys(n + i, n + i) = 1.0;
    sys.row(n + i).segment(0, n) += tau * d.row(i).cast<Complex>();
  }
  // Outgoing characteristics: (u+w) + tau (u+w)' at x=1,
  // (u-w) - tau (u-w)' at x=0, one-sided stencils.
  sys(n - 1, n - 1) = 1.0;
  sys(n - 1, 2 * n - 1) = 1.0;
  sys.row(n - 1).segment(0, n) += tau * d.row(n - 1).cast<Complex>();
  sys.row(n - 1).segment(n, n) += tau * d.row(n - 1).cast<Complex>();
  sys(n, 0) = 1.0;
  sys(n, n) = -1.0;
  sys.row(n).segment(0, n) -= tau * d.row(0).cast<Complex>();
  sys.row(n).segment(n, n) += tau * d.row(0).cast<Complex>();
  // Constraint rows on (u(0), u(1), w(0), w(1)).
  for (int r = 0; r < 2; ++r) {
    const int slot = (r == 0) ? 0 : 2 * n - 1;
    sys.row(slot).setZero();
    sys(slot, 0) = b.constraints(r, 0);
    sys(slot, n - 1) = b.constraints(r, 1);
    sys(slot, n) = b.constraints(r, 2);
    sys(slot, 2 * n - 1) = b.constraints(r, 3);
  }
  system_ = std::move(sys);
  lu_.compute(system_);
}

std::pair<GridFunction, GridFunction> ResolventOperator::solve(
    const GridFunction& f, const GridFunction& g) const {
  if (f.n != n_ || g.n != n_)
    throw std::invalid_argument("ResolventOperator: grid size mismatch");
  CVector rhs = CVector::Zero(2 * n_);
  rhs.segment(1, n_ - 2) = f.values.segment(1, n_ - 2);
  rhs.segment(n_ + 1, n_ - 2) = g.values.segment(1, n_ - 2);
  rhs(n_ - 1) = f.values(n_ - 1) + g.values(n_ - 1);
  rhs(n_) = f.values(0) - g.values(0);
  rhs(0) = 0.0;
  rhs(2 * n_ - 1) = 0.0;
  CVector z = lu_.solve(rhs);
  const double scale = std::max(rhs.norm(), 1.0);
  if ((system_ * z - rhs).norm() > 1e-10 * scale)
    throw SingularSystemError("discrete resolvent system is singular");
  GridFunction u = zero_grid(n_), w = zero_grid(n_);
  u.values = z.head(n_);
  w.values = z.tail(n_);
  return {u, w};
}

std::pair<GridFunction, GridFunction> resolvent_solve(const BlockOperator& b,
                                                      double tau,
                                                      const GridFunction& f,
                                                      const GridFunction& g) {
  return ResolventOperator(b, tau, f.n).solve(f, g);
}

Trajectory evolve(const BlockOperator& b, const EvolutionConfig& cfg,
                  GridFunction u0, GridFunction w0) {
  if (cfg.steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
  if (u0.n != cfg.n || w0.n != cfg.n)
    throw std::invalid_argument("evolve: initial data grid mismatch");
  Trajectory traj;
  CVector xi(4);
  xi << u0.values(0), u0.values(cfg.n - 1), w0.values(0), w0.values(cfg.n - 1);
  if ((b.constraints * xi).norm() > 1e-8 * std::max(1.0, xi.norm())) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(b.constraints);
    CVector delta = -cod.solve(Matrix(b.constraints * xi));
    u0.values(0) += delta(0);
    u0.values(cfg.n - 1) += delta(1);
    w0.values(0) += delta(2);
    w0.values(cfg.n - 1) += delta(3);
    traj.projected_initial = true;
  }
  ResolventOperator res(b, cfg.tau, cfg.n);
  traj.records.push_back({0, 0.0, pair_energy(u0, w0)});
  GridFunction u = std::move(u0), w = std::move(w0);
  for (int k = 1; k <= cfg.steps; ++k) {
    auto [un, wn] = res.solve(u, w);
    u = std::move(un);
    w = std::move(wn);
    traj.records.push_back({k, k * cfg.tau, pair_energy(u, w)});
  }
  traj.u = std::move(u);
  traj.w = std::move(w);
  return traj;
}

std::pair<TestFunction1D, TestFunction1D> manufactured_pair() {
  // u*(x) = x^2 (1-x)^2, w*(x) = x (1-x) (1 - 2x); both vanish at the
  // endpoints, so every scenario's constraints hold.
  TestFunction1D u = TestFunction1D::polynomial({0.0, 0.0, 1.0, -2.0, 1.0});
  TestFunction1D w = TestFunction1D::polynomial({0.0, 1.0, -3.0, 2.0});
  return {u, w};
}

double convergence_order(const BlockOperator& b, double tau,
                         const std::vector<int>& grids) {
  if (grids.size() < 3)
    throw std::invalid_argument("convergence_order: need at least 3 grids");
  for (size_t i = 1; i < grids.size(); ++i)
    if (grids[i] <= grids[i - 1])
      throw std::invalid_argument("convergence_order: grids must be strictly increasing");
  auto [ustar, wstar] = manufactured_pair();
  TestFunction1D f = ustar + wstar.derivative() * tau;
  TestFunction1D g = wstar + ustar.derivative() * tau;
  std::vector<double> logh, logerr;
  for (int n : grids) {
    auto [u, w] = resolvent_solve(b, tau, grid_sample(f, n), grid_sample(g, n));
    const GridFunction ue = grid_sample(ustar, n), we = grid_sample(wstar, n);
    const double err =
        std::max((u.values - ue.values).cwiseAbs().maxCoeff(),
                 (w.values - we.values).cwiseAbs().maxCoeff());
    logh.push_back(std::log(1.0 / (n - 1)));
    logerr.push_back(std::log(std::max(err, 1e-300)));
  }
  const size_t m = grids.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += logh[i];
    sy += logerr[i];
    sxx += logh[i] * logh[i];
    sxy += logh[i] * logerr[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace monorel
