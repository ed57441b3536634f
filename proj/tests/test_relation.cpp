#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "monorel/relation.hpp"

using namespace monorel;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix randn(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = Complex(d(rng), d(rng));
  return m;
}

}  // namespace

TEST_CASE("adjoint: identity, multivalued part, and matrix graphs") {
  auto sp = euclidean_space(2);
  LinearRelation id = graph_of(sp, Matrix::Identity(2, 2));
  CHECK(relation_equal(adjoint(id), id, 1e-10));

  LinearRelation mv = zero_times(sp, full_subspace(sp));
  CHECK(relation_equal(adjoint(mv), mv, 1e-10));

  // identity Gram: C* is the graph of A^dagger
  Matrix a = mat2(1, 2, 0, 1);
  CHECK(relation_equal(adjoint(graph_of(sp, a)), graph_of(sp, Matrix(a.adjoint())),
                       1e-10));

  // non-trivial Gram W: the adjoint graph is W^{-1} A^dagger W,
  // via brute-force solve of <Av|x>_W = <v|y>_W for all v
  Matrix w = mat2(2, Complex(0.5, 0.25), Complex(0.5, -0.25), 3);
  auto spw = make_space(w);
  Matrix expected = w.inverse() * a.adjoint() * w;
  CHECK(relation_equal(adjoint(graph_of(spw, a)), graph_of(spw, expected), 1e-10));
}

TEST_CASE("adjoint agrees with the complement-of-flip oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const int dim = 1 + int(rng() % 4);
    LinearRelation c = random_monotone(dim, RandomKind::Relation, rng());
    CHECK(relation_equal(adjoint(c), adjoint_via_complement(c), 1e-9));
  }
}

TEST_CASE("inverse, one_plus and sets") {
  auto sp = euclidean_space(2);
  Matrix d = mat2(2, 0, 0, 3);
  CHECK(relation_equal(inverse(graph_of(sp, d)),
                       graph_of(sp, mat2(0.5, 0, 0, 1.0 / 3.0)), 1e-12));

  LinearRelation id = graph_of(sp, Matrix::Identity(2, 2));
  CHECK(range(one_plus(id, 1.0)).dim() == 2);

  // pre-set of the kernel through two routes
  Matrix a = mat2(1, 1, 0, 0);
  LinearRelation ga = graph_of(sp, a);
  Subspace direct = kernel(sp, a);
  Subspace via_rel = pre_set(ga, zero_subspace(sp));
  CHECK(subspace_equal(direct, via_rel, 1e-10));
}

TEST_CASE("compose matches the matrix product") {
  auto sp = euclidean_space(3);
  std::mt19937_64 rng(5);
  Matrix a = randn(rng, 3, 3), b = randn(rng, 3, 3);
  LinearRelation comp = compose(graph_of(sp, b), graph_of(sp, a));
  CHECK(relation_equal(comp, graph_of(sp, Matrix(b * a)), 1e-10));

  LinearRelation ga = graph_of(sp, a);
  CHECK(relation_equal(compose(graph_of(sp, Matrix::Identity(3, 3)), ga), ga, 1e-10));

  // zero map after C: dom(C) x {0}
  LinearRelation z = compose(graph_of(sp, Matrix::Zero(3, 3)), ga);
  CHECK(subspace_equal(domain(z), domain(ga), 1e-10));
  CHECK(range(z).dim() == 0);
}

TEST_CASE("monotonicity with witnesses") {
  auto sp = euclidean_space(2);
  CHECK(is_monotone(graph_of(sp, Matrix::Identity(2, 2))).monotone);

  auto rep = is_monotone(graph_of(sp, Matrix(-Matrix::Identity(2, 2))));
  CHECK_FALSE(rep.monotone);
  REQUIRE(rep.witness.has_value());
  const auto& [x, y] = *rep.witness;
  CHECK((x.adjoint() * y)(0).real() < 0.0);

  // skew: Re<x|Tx> = 0 identically
  CHECK(is_monotone(graph_of(sp, mat2(0, 1, -1, 0))).monotone);
}

TEST_CASE("maximality via Minty rank") {
  auto sp = euclidean_space(2);
  CHECK(is_maximal_monotone(graph_of(sp, Matrix::Identity(2, 2))).maximal);
  CHECK(is_maximal_monotone(graph_of(sp, mat2(0, 1, -1, 0))).maximal);

  // identity restricted to span{e1}: monotone but 1+C has rank 1
  Matrix span(4, 1);
  span << 1, 0, 1, 0;
  auto rep = is_maximal_monotone(make_relation(sp, sp, span));
  CHECK(rep.monotone);
  CHECK_FALSE(rep.maximal);
}

TEST_CASE("selfadjointness") {
  auto sp = euclidean_space(2);
  CHECK(is_selfadjoint(graph_of(sp, mat2(1, 0, 0, 2))));
  CHECK_FALSE(is_selfadjoint(graph_of(sp, mat2(0, 1, -1, 0))));
  CHECK(is_selfadjoint(zero_times(sp, full_subspace(sp))));
}

TEST_CASE("resolvent values") {
  auto sp = euclidean_space(2);
  std::mt19937_64 rng(9);
  CVector y = randn(rng, 2, 1).col(0);

  LinearRelation id = graph_of(sp, Matrix::Identity(2, 2));
  CHECK((resolvent_apply(id, 1.0, y) - y / 2.0).norm() < 1e-12);

  LinearRelation mv = zero_times(sp, full_subspace(sp));
  CHECK(resolvent_apply(mv, 0.7, y).norm() < 1e-12);

  // diag(1,3), lambda = 0.5: componentwise y1/1.5, y2/2.5
  CVector u = resolvent_apply(graph_of(sp, mat2(1, 0, 0, 3)), 0.5, y);
  CHECK(std::abs(u(0) - y(0) / 1.5) < 1e-12);
  CHECK(std::abs(u(1) - y(1) / 2.5) < 1e-12);

  // refuse non-maximal input
  Matrix span(4, 1);
  span << 1, 0, 1, 0;
  CHECK_THROWS_AS(resolvent_apply(make_relation(sp, sp, span), 1.0, y),
                  NotMaximalMonotoneError);
}

TEST_CASE("random_monotone determinism and structure") {
  LinearRelation a = random_monotone(4, RandomKind::Relation, 123);
  LinearRelation b = random_monotone(4, RandomKind::Relation, 123);
  CHECK((a.graph.basis - b.graph.basis).cwiseAbs().maxCoeff() == 0.0);

  for (std::uint64_t s = 0; s < 100; ++s) {
    // everywhere-defined monotone operators are maximal
    CHECK(is_maximal_monotone(random_monotone(4, RandomKind::Operator, s)).maximal);
  }
  for (std::uint64_t s = 0; s < 30; ++s)
    CHECK(is_selfadjoint(random_monotone(3, RandomKind::Selfadjoint, s)));
}

TEST_CASE("property corpus: Minty equivalence, involutions, nonexpansiveness") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int dim = 1; dim <= 5; ++dim) {
    for (int t = 0; t < 12; ++t) {
      const std::uint64_t s = rng();
      const RandomKind kind = t % 2 ? RandomKind::Relation : RandomKind::Operator;
      LinearRelation c = random_monotone(dim, kind, s);
      // is_maximal_monotone throws InconsistencyError on any verdict split
      auto rep = is_maximal_monotone(c);
      CHECK(rep.monotone);

      CHECK(relation_equal(adjoint(adjoint(c)), c, 1e-9));
      CHECK(relation_equal(inverse(inverse(c)), c, 1e-10));

      if (rep.maximal) {
        CHECK(operator_norm(c.src, resolvent_matrix(c, 1.0)) <= 1.0 + 1e-10);
        CVector y1 = randn(rng, dim, 1).col(0), y2 = randn(rng, dim, 1).col(0);
        const double lhs = c.src->norm(
            CVector(resolvent_apply(c, 1.0, y1) - resolvent_apply(c, 1.0, y2)));
        CHECK(lhs <= (1.0 + 1e-10) * c.src->norm(CVector(y1 - y2)));
        ++checked;
      }
    }
  }
  CHECK(checked > 10);
}
