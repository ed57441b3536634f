#pragma once

#include <vector>

#include "monorel/bdspace.hpp"
#include "monorel/systemnode.hpp"

namespace monorel {

/// Values on a uniform grid over [0, 1] including both endpoints.
struct GridFunction {
  int n = 0;
  CVector values;

  double spacing() const { return 1.0 / (n - 1); }
};

GridFunction zero_grid(int n);
GridFunction grid_sample(const TestFunction1D& f, int n);

double trapezoid_norm_sq(const GridFunction& f);
double pair_energy(const GridFunction& u, const GridFunction& w);

/// Factorization of the discrete (1 + tau*A) operator for one scenario,
/// grid size and step; reusable across right-hand sides.
///
/// Discretization: second-order centered differences inside, one-sided
/// second-order stencils at the endpoints. The system keeps the interior
/// equations of both fields, the two boundary constraint rows of the
/// relation h, and closes the remaining two slots with the outgoing
/// characteristic equations (u+w at x=1, u-w at x=0).
class ResolventOperator {
public:
  ResolventOperator(const BlockOperator& b, double tau, int n);

  /// Solves u + tau*w' = f, w + tau*u' = g; residual is checked to
  /// 1e-10 relative, otherwise SingularSystemError.
  std::pair<GridFunction, GridFunction> solve(const GridFunction& f,
                                              const GridFunction& g) const;

  double tau() const { return tau_; }
  int n() const { return n_; }

private:
  double tau_;
  int n_;
  Matrix system_;
  Eigen::PartialPivLU<Matrix> lu_;
};

std::pair<GridFunction, GridFunction> resolvent_solve(const BlockOperator& b,
                                                      double tau,
                                                      const GridFunction& f,
                                                      const GridFunction& g);

struct EvolutionConfig {
  double tau = 0.01;
  int steps = 1;
  int n = 256;
};

struct StepRecord {
  int step;
  double t;
  double energy;
};

struct Trajectory {
  std::vector<StepRecord> records;  // records[0] is the initial state
  GridFunction u, w;                // final state
  bool projected_initial = false;
};

/// Implicit Euler z_{k+1} = (1 + tau*A)^{-1} z_k. Initial data violating
/// the boundary constraints beyond 1e-8 is projected (endpoint values
/// minimally corrected) and flagged.
Trajectory evolve(const BlockOperator& b, const EvolutionConfig& cfg,
                  GridFunction u0, GridFunction w0);

/// Least-squares slope of log(error) against log(spacing) for the
/// manufactured polynomial solution; needs >= 3 strictly increasing grids.
double convergence_order(const BlockOperator& b, double tau,
                         const std::vector<int>& grids);

/// Manufactured pair with zero endpoint values (admissible for every
/// boundary scenario) used by the convergence study.
std::pair<TestFunction1D, TestFunction1D> manufactured_pair();

}  // namespace monorel
