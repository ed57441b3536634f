#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "monorel/semigroup.hpp"

using namespace monorel;

namespace {

double grid_error(const GridFunction& a, const TestFunction1D& exact) {
  double m = 0.0;
  for (int i = 0; i < a.n; ++i) {
    const double x = double(i) * a.spacing();
    m = std::max(m, std::abs(a.values(i) - exact(x)));
  }
  return m;
}

}  // namespace

TEST_CASE("grid plumbing") {
  CHECK_THROWS(zero_grid(4));
  GridFunction g = grid_sample(TestFunction1D::polynomial({0.0, 1.0}), 11);
  CHECK(g.n == 11);
  CHECK(std::abs(g.values(10) - 1.0) < 1e-15);
  CHECK(std::abs(g.values(5) - 0.5) < 1e-15);
  // trapezoid rule integrates |x|^2 to 1/3 with O(h^2) error
  CHECK(trapezoid_norm_sq(g) == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
  CHECK(pair_energy(g, g) == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
}

TEST_CASE("resolvent solver reproduces the manufactured solution") {
  auto [ustar, wstar] = manufactured_pair();
  const double tau = 0.05;
  TestFunction1D f = ustar + wstar.derivative() * tau;
  TestFunction1D g = wstar + ustar.derivative() * tau;

  for (const BlockOperator& b :
       {forward_h(ts_dirichlet()), forward_h(ts_neumann()),
        forward_h(ts_full_trace()), block_operator_from_h(h_robin(1.0)),
        block_operator_from_h(h_skew())}) {
    auto [u, w] = resolvent_solve(b, tau, grid_sample(f, 200), grid_sample(g, 200));
    CHECK(grid_error(u, ustar) < 5e-4);
    CHECK(grid_error(w, wstar) < 5e-4);
  }
}

TEST_CASE("observed convergence order is near 2") {
  CHECK_THROWS(convergence_order(forward_h(ts_dirichlet()), 0.05, {64, 128}));
  for (const BlockOperator& b :
       {forward_h(ts_dirichlet()), forward_h(ts_full_trace()),
        block_operator_from_h(h_robin(2.0))}) {
    const double order = convergence_order(b, 0.05, {64, 128, 256});
    CHECK(order > 1.8);
    CHECK(order < 2.2);
  }
}

TEST_CASE("implicit Euler dissipates energy") {
  EvolutionConfig cfg{0.01, 100, 256};
  auto bump_u = TestFunction1D::polynomial({0.0, 16.0, -32.0, 16.0});
  GridFunction u0 = grid_sample(bump_u, cfg.n);
  GridFunction w0 = zero_grid(cfg.n);

  for (const BlockOperator& b :
       {forward_h(ts_dirichlet()), forward_h(ts_neumann()),
        forward_h(ts_full_trace()), block_operator_from_h(h_robin(0.5)),
        block_operator_from_h(h_robin(1.0)), block_operator_from_h(h_robin(2.0))}) {
    Trajectory tr = evolve(b, cfg, u0, w0);
    REQUIRE(tr.records.size() == std::size_t(cfg.steps) + 1);
    for (std::size_t k = 1; k < tr.records.size(); ++k) {
      CHECK(tr.records[k].energy <=
            tr.records[k - 1].energy * (1.0 + 1e-3) + 1e-14);
    }
  }

  // the full-trace (impedance) scenario radiates through both endpoints:
  // energy is strictly decreasing once the wave reaches the boundary
  Trajectory imp = evolve(forward_h(ts_full_trace()), cfg, u0, w0);
  for (std::size_t k = 1; k < imp.records.size(); ++k)
    CHECK(imp.records[k].energy < imp.records[k - 1].energy);
  CHECK(imp.records.back().energy < 0.5 * imp.records.front().energy);
}

TEST_CASE("incompatible initial data is projected and flagged") {
  EvolutionConfig cfg{0.01, 3, 64};
  // constant 1 violates the Dirichlet endpoint constraints
  GridFunction one = grid_sample(TestFunction1D::polynomial({1.0}), cfg.n);
  Trajectory tr = evolve(forward_h(ts_dirichlet()), cfg, one, zero_grid(cfg.n));
  CHECK(tr.projected_initial);

  GridFunction ok = grid_sample(TestFunction1D::polynomial({0.0, 1.0, -1.0}), cfg.n);
  Trajectory tr2 = evolve(forward_h(ts_dirichlet()), cfg, ok, zero_grid(cfg.n));
  CHECK_FALSE(tr2.projected_initial);
}
