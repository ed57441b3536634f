#include "monorel/relation.hpp"

#include <Eigen/Eigenvalues>
#include <random>

namespace monorel {

namespace {

void require_endomorphism(const LinearRelation& c, const char* who) {
  if (c.src->dim() != c.dst->dim() ||
      (c.src->gram() - c.dst->gram()).cwiseAbs().maxCoeff() > 1e-13)
    throw std::invalid_argument(std::string(who) + ": src and dst must coincide");
}

}  // namespace

LinearRelation make_relation(const SpacePtr& src, const SpacePtr& dst,
                             const Matrix& pair_span) {
  if (pair_span.rows() != src->dim() + dst->dim())
    throw std::invalid_argument("make_relation: pair_span row count mismatch");
  SpacePtr prod = product_space(src, dst);
  return LinearRelation{src, dst, prod, orthonormal_basis(prod, pair_span)};
}

LinearRelation graph_of(const SpacePtr& src, const SpacePtr& dst, const Matrix& a) {
  Matrix span(src->dim() + dst->dim(), src->dim());
  span.topRows(src->dim()) = Matrix::Identity(src->dim(), src->dim());
  span.bottomRows(dst->dim()) = a;
  return make_relation(src, dst, span);
}

LinearRelation graph_of(const SpacePtr& space, const Matrix& a) {
  return graph_of(space, space, a);
}

LinearRelation zero_times(const SpacePtr& space, const Subspace& w) {
  Matrix span = Matrix::Zero(2 * space->dim(), w.dim());
  span.bottomRows(space->dim()) = w.basis;
  return make_relation(space, space, span);
}

bool relation_equal(const LinearRelation& a, const LinearRelation& b, double tol) {
  return subspace_equal(a.graph, b.graph, tol);
}

LinearRelation adjoint(const LinearRelation& c) {
  // (x,y) in C*  <=>  for all graph columns (u_j, v_j):
  //   <v_j|x>_dst - <u_j|y>_src = 0.
  const Matrix u = c.first_block(), v = c.second_block();
  Matrix cond(c.graph_dim(), c.dst->dim() + c.src->dim());
  cond.leftCols(c.dst->dim()) = (c.dst->gram() * v).adjoint();
  cond.rightCols(c.src->dim()) = -(c.src->gram() * u).adjoint();
  SpacePtr prod = product_space(c.dst, c.src);
  Subspace graph = kernel(prod, cond);
  return LinearRelation{c.dst, c.src, prod, graph};
}

LinearRelation adjoint_via_complement(const LinearRelation& c) {
  require_endomorphism(c, "adjoint_via_complement");
  Matrix flipped(c.dst->dim() + c.src->dim(), c.graph_dim());
  flipped.topRows(c.dst->dim()) = c.second_block();
  flipped.bottomRows(c.src->dim()) = -c.first_block();
  Subspace flip = orthonormal_basis(c.prod, flipped);
  return LinearRelation{c.src, c.dst, c.prod, complement(flip)};
}

LinearRelation inverse(const LinearRelation& c) {
  Matrix flipped(c.dst->dim() + c.src->dim(), c.graph_dim());
  flipped.topRows(c.dst->dim()) = c.second_block();
  flipped.bottomRows(c.src->dim()) = c.first_block();
  return make_relation(c.dst, c.src, flipped);
}

LinearRelation one_plus(const LinearRelation& c, double lambda) {
  require_endomorphism(c, "one_plus");
  if (lambda <= 0) throw std::invalid_argument("one_plus: lambda must be positive");
  Matrix span(2 * c.src->dim(), c.graph_dim());
  span.topRows(c.src->dim()) = c.first_block();
  span.bottomRows(c.src->dim()) = c.first_block() + lambda * c.second_block();
  return make_relation(c.src, c.src, span);
}

LinearRelation compose(const LinearRelation& c2, const LinearRelation& c1) {
  if (c1.dst->dim() != c2.src->dim())
    throw std::invalid_argument("compose: c1.dst and c2.src mismatch");
  // (x,z) with intermediate y: match the y-components of both graphs.
  const int k1 = c1.graph_dim(), k2 = c2.graph_dim();
  Matrix match(c1.dst->dim(), k1 + k2);
  match.leftCols(k1) = c1.second_block();
  match.rightCols(k2) = -c2.first_block();
  Subspace coeff = kernel(euclidean_space(k1 + k2), match);
  Matrix span(c1.src->dim() + c2.dst->dim(), coeff.dim());
  span.topRows(c1.src->dim()) = c1.first_block() * coeff.basis.topRows(k1);
  span.bottomRows(c2.dst->dim()) = c2.second_block() * coeff.basis.bottomRows(k2);
  return make_relation(c1.src, c2.dst, span);
}

namespace {

Subspace component_set(const SpacePtr& out_space, const Matrix& cond_block,
                       const Matrix& out_block, const Subspace& restrict_to) {
  Matrix resid = cond_block;
  if (restrict_to.dim() > 0) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(restrict_to.basis);
    resid = cond_block - restrict_to.basis * cod.solve(cond_block);
  }
  Subspace coeff = kernel(euclidean_space(static_cast<int>(cond_block.cols())), resid);
  return orthonormal_basis(out_space, out_block * coeff.basis);
}

}  // namespace

Subspace pre_set(const LinearRelation& c, const Subspace& m) {
  return component_set(c.src, c.second_block(), c.first_block(), m);
}

Subspace post_set(const LinearRelation& c, const Subspace& n) {
  return component_set(c.dst, c.first_block(), c.second_block(), n);
}

Subspace domain(const LinearRelation& c) {
  return orthonormal_basis(c.src, c.first_block());
}

Subspace range(const LinearRelation& c) {
  return orthonormal_basis(c.dst, c.second_block());
}

MonotonicityReport is_monotone(const LinearRelation& c) {
  require_endomorphism(c, "is_monotone");
  MonotonicityReport rep;
  const int k = c.graph_dim();
  if (k == 0) {
    rep.monotone = true;
    return rep;
  }
  const Matrix a = c.first_block(), b = c.second_block();
  Matrix form = a.adjoint() * c.src->gram() * b;
  Matrix herm = (form + Matrix(form.adjoint())) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(k - 1))));
  if (ev(0) >= -1e-11 * scale) {
    rep.monotone = true;
  } else {
    rep.monotone = false;
    CVector coeff = es.eigenvectors().col(0);
    rep.witness = std::make_pair(CVector(a * coeff), CVector(b * coeff));
  }
  return rep;
}

MonotonicityReport is_maximal_monotone(const LinearRelation& c) {
  MonotonicityReport rep = is_monotone(c);
  rep.minty_lambdas_checked = {0.1, 1.0, 10.0};
  if (!rep.monotone) return rep;

  std::vector<bool> verdicts;
  for (double lambda : rep.minty_lambdas_checked) {
    const Matrix onto = c.first_block() + lambda * c.second_block();
    verdicts.push_back(numerical_rank(onto) == c.src->dim());
  }
  const bool adjoint_monotone = is_monotone(adjoint(c)).monotone;
  for (bool v : verdicts)
    if (v != verdicts[0])
      throw InconsistencyError("Minty verdict differs across lambda");
  if (adjoint_monotone != verdicts[0])
    throw InconsistencyError("Minty verdict contradicts the adjoint criterion");
  rep.maximal = verdicts[0];
  return rep;
}

bool is_selfadjoint(const LinearRelation& c, double tol) {
  require_endomorphism(c, "is_selfadjoint");
  return subspace_equal(c.graph, adjoint(c).graph, tol);
}

namespace {

Matrix resolvent_coeff_solve(const LinearRelation& c, double lambda, const Matrix& rhs) {
  const Matrix sys = c.src->to_ortho_mat(c.first_block() + lambda * c.second_block());
  const Matrix orhs = c.src->to_ortho_mat(rhs);
  Eigen::ColPivHouseholderQR<Matrix> qr(sys);
  Matrix coeff = qr.solve(orhs);
  const double scale = std::max(orhs.norm(), 1e-300);
  if ((sys * coeff - orhs).norm() > 1e-10 * scale)
    throw SingularSystemError("resolvent system is inconsistent");
  return coeff;
}

}  // namespace

CVector resolvent_apply(const LinearRelation& c, double lambda, const CVector& y) {
  if (lambda <= 0) throw std::invalid_argument("resolvent_apply: lambda must be positive");
  if (!is_maximal_monotone(c).maximal)
    throw NotMaximalMonotoneError("resolvent_apply: relation is not maximal monotone");
  Matrix coeff = resolvent_coeff_solve(c, lambda, y);
  return c.first_block() * coeff;
}

Matrix resolvent_matrix(const LinearRelation& c, double lambda) {
  Matrix coeff = resolvent_coeff_solve(c, lambda,
                                       Matrix::Identity(c.src->dim(), c.src->dim()));
  return c.first_block() * coeff;
}

double operator_norm(const SpacePtr& space, const Matrix& a) {
  // Largest generalized eigenvalue of (a^dagger G a, G).
  Matrix lhs = a.adjoint() * space->gram() * a;
  lhs = (lhs + Matrix(lhs.adjoint())) / 2.0;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(lhs, space->gram());
  const double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

namespace {

Matrix randn_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

}  // namespace

LinearRelation random_monotone(int dim, RandomKind kind, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_monotone: dim must be >= 1");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x100 * dim +
                      static_cast<std::uint64_t>(kind));
  Matrix z = randn_matrix(rng, dim, dim);
  Matrix w = z.adjoint() * z / double(dim) + Matrix::Identity(dim, dim);
  SpacePtr space = make_space((w + Matrix(w.adjoint())) / 2.0);

  if (kind == RandomKind::Selfadjoint) {
    const int k = static_cast<int>(rng() % (dim + 1));
    Subspace u = orthonormal_basis(space, randn_matrix(rng, dim, k));
    Matrix y = randn_matrix(rng, u.dim(), u.dim());
    Matrix s = y.adjoint() * y / std::max(1, u.dim());
    Subspace mult = complement(u);
    Matrix span(2 * dim, u.dim() + mult.dim());
    span.topLeftCorner(dim, u.dim()) = u.basis;
    span.bottomLeftCorner(dim, u.dim()) = u.basis * s;
    span.topRightCorner(dim, mult.dim()).setZero();
    span.bottomRightCorner(dim, mult.dim()) = mult.basis;
    return make_relation(space, space, span);
  }

  Matrix b = randn_matrix(rng, dim, dim);
  Matrix psd = b.adjoint() * b / double(dim);
  Matrix n = randn_matrix(rng, dim, dim);
  Matrix skew = (n - Matrix(n.adjoint())) / 2.0;
  Matrix t = space->gram().llt().solve(psd + skew);  // monotone w.r.t. the Gram

  if (kind == RandomKind::Operator) return graph_of(space, t);

  // Relation: restrict the domain and add a multivalued part inside the
  // Gram complement of the domain, which preserves monotonicity.
  const int d = static_cast<int>(rng() % (dim + 1));
  Subspace dom = orthonormal_basis(space, randn_matrix(rng, dim, d));
  Subspace comp = complement(dom);
  int md = comp.dim() > 0 ? static_cast<int>(rng() % (comp.dim() + 1)) : 0;
  // keep the relation nonempty: an empty graph is monotone only vacuously
  // and useless as a test subject
  if (dom.dim() == 0 && md == 0) md = comp.dim();
  Matrix mult = comp.basis * randn_matrix(rng, comp.dim(), md);
  Matrix span(2 * dim, dom.dim() + md);
  span.topLeftCorner(dim, dom.dim()) = dom.basis;
  span.bottomLeftCorner(dim, dom.dim()) = t * dom.basis;
  span.topRightCorner(dim, md).setZero();
  span.bottomRightCorner(dim, md) = mult;
  return make_relation(space, space, span);
}

}  // namespace monorel
