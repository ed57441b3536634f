// Acceptance gate: ten independent checks, one pass/fail line each.
// Exit status 0 iff every check passes.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "monorel/arens.hpp"
#include "monorel/semigroup.hpp"
#include "monorel/systemnode.hpp"

using namespace monorel;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%2d] %-34s %s  (%s)\n", index, name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

struct Corpus {
  std::vector<LinearRelation> relations;
  std::vector<bool> maximal;
};

Corpus build_corpus() {
  Corpus c;
  std::uint64_t seed = 1000;
  for (int dim = 1; dim <= 6; ++dim) {
    for (int t = 0; t < 36; ++t) {
      const RandomKind kind = t % 2 ? RandomKind::Relation : RandomKind::Operator;
      c.relations.push_back(random_monotone(dim, kind, seed++));
    }
  }
  return c;
}

// 1. Minty maximality verdicts agree across lambda in {0.1, 1, 10} and with
//    the monotone-adjoint criterion on >= 200 random relations, dims 1-6.
void check_minty(Corpus& c) {
  int disagreements = 0;
  for (const LinearRelation& r : c.relations) {
    try {
      c.maximal.push_back(is_maximal_monotone(r).maximal);
    } catch (const InconsistencyError&) {
      ++disagreements;
      c.maximal.push_back(false);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu relations, %d disagreements",
                c.relations.size(), disagreements);
  report(1, "Minty maximality equivalence", disagreements == 0, buf);
}

// 2. Resolvent operator norm <= 1 + 1e-10 on the maximal part of the corpus.
void check_nonexpansive(const Corpus& c) {
  double worst = 0.0;
  int tested = 0;
  for (std::size_t i = 0; i < c.relations.size(); ++i) {
    if (!c.maximal[i]) continue;
    ++tested;
    for (double lambda : {0.1, 1.0, 10.0}) {
      const double n = operator_norm(c.relations[i].src,
                                     resolvent_matrix(c.relations[i], lambda));
      worst = std::max(worst, n);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d relations, worst norm %.3e", tested, worst);
  report(2, "resolvent nonexpansiveness", tested > 0 && worst <= 1.0 + 1e-10, buf);
}

// 3. Arens round trip on >= 100 random selfadjoint relations; PSD operator part.
void check_arens() {
  double worst_angle = 0.0, worst_eig = 0.0;
  int n = 0;
  bool ok = true;
  for (std::uint64_t s = 0; s < 120; ++s) {
    const int dim = 1 + int(s % 6);
    LinearRelation c = random_monotone(dim, RandomKind::Selfadjoint, 5000 + s);
    ArensDecomposition dec = decompose(c);
    LinearRelation back = reconstruct(dec);
    worst_angle = std::max(worst_angle,
                           largest_principal_angle(back.graph, c.graph));
    ok = ok && relation_equal(back, c, 1e-10);
    if (dec.u_space.dim() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(dec.s_matrix);
      worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
      ok = ok && es.eigenvalues().minCoeff() >= -1e-12;
    }
    ++n;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d cases, angle %.2e, min eig %.2e", n,
                worst_angle, worst_eig);
  report(3, "Arens decomposition round trip", ok, buf);
}

// 4. Boundary space Gram vs quadrature; differentiation unitarity; inverse pair.
void check_bd() {
  const Eigen::Matrix2d g = bd_gram();
  const TestFunction1D basis[2] = {TestFunction1D::cosh_fn(),
                                   TestFunction1D::sinh_fn()};
  double gram_err = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      gram_err = std::max(gram_err,
                          std::abs(graph_inner(basis[i], basis[j]) - g(i, j)));

  // gdot unitarity: J^dagger G J = G with J the coordinate swap
  Eigen::Matrix2d j;
  j << 0, 1, 1, 0;
  const double unit_err = (j.transpose() * g * j - g).cwiseAbs().maxCoeff();

  // adjointness of the two differentiation maps and exact inversion
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  double adj_err = 0.0;
  bool exact_inverse = true;
  for (int t = 0; t < 25; ++t) {
    Eigen::Vector2cd xc(Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)));
    Eigen::Vector2cd yc(Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)));
    BDVector x{BoundaryKind::G, xc}, y{BoundaryKind::D, yc};
    const Complex lhs =
        (apply_gdot(x).coords.adjoint() * g.cast<Complex>() * y.coords)(0);
    const Complex rhs =
        (x.coords.adjoint() * g.cast<Complex>() * apply_ddot(y).coords)(0);
    adj_err = std::max(adj_err, std::abs(lhs - rhs));
    exact_inverse =
        exact_inverse && (apply_ddot(apply_gdot(x)).coords - xc).norm() == 0.0;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "gram %.2e, unitary %.2e, adjoint %.2e",
                gram_err, unit_err, adj_err);
  report(4, "boundary data space",
         gram_err < 1e-13 && unit_err < 1e-12 && adj_err < 1e-12 && exact_inverse,
         buf);
}

std::vector<std::pair<std::string, LinearRelation>> scenario_suite() {
  return {{"dirichlet", forward_h(ts_dirichlet()).h},
          {"neumann", forward_h(ts_neumann()).h},
          {"robin05", h_robin(0.5)},
          {"robin1", h_robin(1.0)},
          {"robin2", h_robin(2.0)},
          {"full_trace", forward_h(ts_full_trace()).h},
          {"random_sa_full", h_random_selfadjoint(2, 11)},
          {"random_sa_mv", h_random_selfadjoint(1, 12)}};
}

// 5. Closed forms of the forward construction; every h maximal monotone
//    and selfadjoint.
void check_forward_closed_forms() {
  const double coth1 = std::cosh(1.0) / std::sinh(1.0);
  auto sp = bd_hilbert();
  bool ok = relation_equal(forward_h(ts_dirichlet()).h,
                           zero_times(sp, full_subspace(sp)), 1e-10);
  ok = ok && relation_equal(forward_h(ts_neumann()).h,
                            inverse(zero_times(sp, full_subspace(sp))), 1e-10);
  Matrix tfull(2, 2);
  tfull << 2.0 * coth1, 1.0, -1.0, 0.0;
  ok = ok && relation_equal(forward_h(ts_full_trace()).h, graph_of(sp, tfull),
                            1e-10);
  bool structure = true;
  for (const auto& [name, h] : scenario_suite()) {
    structure = structure && is_maximal_monotone(h).maximal && is_selfadjoint(h);
  }
  report(5, "forward construction closed forms", ok && structure,
         ok ? "3 closed forms + 8 structure checks" : "closed-form mismatch");
}

// 6. Re<x|y> = |M xi_x|^2 on 50 random graph samples per scenario.
void check_key_identity() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  const Eigen::Matrix2cd tr = trace_matrix();
  const Eigen::Matrix2d g = bd_gram();
  double worst = 0.0;
  for (const auto& [name, h] : scenario_suite()) {
    const TraceSystem ts = reverse_construct(h);
    const Matrix basis = h.graph.basis;
    for (int t = 0; t < 50; ++t) {
      CVector c(basis.cols());
      for (int i = 0; i < basis.cols(); ++i) c(i) = Complex(nd(rng), nd(rng));
      CVector p = basis * c;
      Eigen::Vector2cd x = p.head(2), y = p.tail(2);
      const double lhs = (x.adjoint() * g.cast<Complex>() * y)(0).real();
      const double rhs = (ts.m * (tr * x)).squaredNorm();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "8 scenarios x 50 samples, worst %.2e", worst);
  report(6, "key boundary identity", worst < 1e-10, buf);
}

// 7. forward_h(reverse_construct(h)) = h across the scenario suite.
void check_round_trip() {
  double worst = 0.0;
  bool ok = true;
  for (const auto& [name, h] : scenario_suite()) {
    LinearRelation back = forward_h(reverse_construct(h)).h;
    worst = std::max(worst, largest_principal_angle(back.graph, h.graph));
    ok = ok && relation_equal(back, h, 1e-9);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "8 scenarios, worst angle %.2e", worst);
  report(7, "trace-system round trip", ok, buf);
}

// 8. The skew relation is rejected by the reverse construction.
void check_skew_rejected() {
  bool rejected = false;
  bool structure = false;
  try {
    structure = is_maximal_monotone(h_skew()).maximal && !is_selfadjoint(h_skew());
    reverse_construct(h_skew());
  } catch (const NotSelfadjointError&) {
    rejected = true;
  }
  report(8, "non-selfadjoint rejection", rejected && structure,
         rejected ? "NotSelfadjointError raised" : "no rejection");
}

// 9. Domain characterizations agree on 100 samples per scenario,
//    including deliberate non-members.
void check_domain_agreement() {
  std::mt19937_64 rng(9);
  int disagreements = 0, nonmembers = 0, total = 0;
  for (const auto& [name, h] : scenario_suite()) {
    const TraceSystem ts = reverse_construct(h);
    const BlockOperator b = forward_h(ts);
    for (int t = 0; t < 100; ++t) {
      const bool member = t % 5 != 0;
      auto [u, w] = sample_domain_pair(b, rng, member);
      auto [m1, m2] = domain_membership(b, ts, u, w);
      if (m1 != m2 || m1 != member) ++disagreements;
      if (!member) ++nonmembers;
      ++total;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d pairs (%d non-members), %d disagreements",
                total, nonmembers, disagreements);
  report(9, "domain characterization agreement", disagreements == 0, buf);
}

// 10. Order-2 convergence; energy dissipation at n = 256 over 100 steps,
//     strictly decreasing for the impedance scenario.
void check_semigroup() {
  std::vector<std::pair<std::string, BlockOperator>> suite;
  for (const auto& [name, h] : scenario_suite())
    suite.emplace_back(name, block_operator_from_h(h));

  double worst_order_dev = 0.0;
  for (const auto& b : {suite[0].second, suite[3].second, suite[5].second}) {
    const double order = convergence_order(b, 0.05, {64, 128, 256});
    worst_order_dev = std::max(worst_order_dev, std::abs(order - 2.0));
  }

  EvolutionConfig cfg{0.01, 100, 256};
  GridFunction u0 =
      grid_sample(TestFunction1D::polynomial({0.0, 16.0, -32.0, 16.0}), cfg.n);
  GridFunction w0 = zero_grid(cfg.n);
  bool dissipative = true, impedance_strict = true;
  for (const auto& [name, b] : suite) {
    Trajectory tr = evolve(b, cfg, u0, w0);
    for (std::size_t k = 1; k < tr.records.size(); ++k) {
      if (tr.records[k].energy >
          tr.records[k - 1].energy * (1.0 + 1e-3) + 1e-14)
        dissipative = false;
      if (name == "full_trace" &&
          tr.records[k].energy >= tr.records[k - 1].energy)
        impedance_strict = false;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "order dev %.2f, dissipative %s, impedance %s",
                worst_order_dev, dissipative ? "yes" : "no",
                impedance_strict ? "strict" : "violated");
  report(10, "semigroup discretization",
         worst_order_dev <= 0.2 && dissipative && impedance_strict, buf);
}

}  // namespace

int main() {
  Corpus corpus = build_corpus();
  check_minty(corpus);
  check_nonexpansive(corpus);
  check_arens();
  check_bd();
  check_forward_closed_forms();
  check_key_identity();
  check_round_trip();
  check_skew_rejected();
  check_domain_agreement();
  check_semigroup();
  std::printf("%s (%d/10 passed)\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
              10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
