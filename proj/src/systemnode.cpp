#include "monorel/systemnode.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace monorel {

namespace {

Matrix complexify(const Eigen::Matrix2d& m) { return m.cast<Complex>(); }

Eigen::Vector2cd traces_of(const TestFunction1D& f) {
  return Eigen::Vector2cd(f(0.0), f(1.0));
}

// Standard-inner-product projector onto V.
Matrix v_projector(const Subspace& v) {
  if (v.dim() == 0) return Matrix::Zero(2, 2);
  return v.basis * v.basis.adjoint();
}

TestFunction1D random_function(std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<Complex> coeffs(5);
  for (auto& c : coeffs) c = Complex(dist(rng), dist(rng));
  TestFunction1D f = TestFunction1D::polynomial(coeffs);
  f = f + TestFunction1D::cosh_fn() * Complex(0.3 * dist(rng), 0.3 * dist(rng));
  f = f + TestFunction1D::sinh_fn() * Complex(0.3 * dist(rng), 0.3 * dist(rng));
  return f;
}

// Adds the BD interpolant of the given trace shift to f.
TestFunction1D shift_traces(const TestFunction1D& f, Complex d0, Complex d1) {
  return f + bd_function(project_boundary(BoundaryKind::G, d0, d1));
}

}  // namespace

SpacePtr bd_hilbert() {
  static const SpacePtr space = make_space(complexify(bd_gram()));
  return space;
}

Eigen::Matrix2cd trace_matrix() {
  Eigen::Matrix2cd p;
  p << 1.0, 0.0, std::cosh(1.0), std::sinh(1.0);
  return p;
}

Eigen::Matrix2cd trace_matrix_inverse() {
  return trace_matrix().inverse();
}

TraceSystem make_trace_system(const Matrix& v_span, const Matrix& m) {
  if (v_span.rows() != 2)
    throw MalformedScenarioError("trace system: V basis must have 2 rows");
  if (v_span.cols() > 0 && numerical_rank(v_span) < v_span.cols())
    throw MalformedScenarioError("trace system: V basis is rank deficient");
  if (m.rows() > 0 && m.cols() != 2)
    throw MalformedScenarioError("trace system: M must have 2 columns");
  TraceSystem ts;
  ts.v_space = orthonormal_basis(euclidean_space(2), v_span);
  ts.m = m.rows() > 0 ? m : Matrix(0, 2);
  return ts;
}

HypothesisReport check_hypothesis(const TraceSystem& ts, std::uint64_t seed) {
  HypothesisReport rep;
  double m_norm = 0.0;
  if (ts.m.rows() > 0) {
    Eigen::JacobiSVD<Matrix> svd(ts.m);
    m_norm = svd.singularValues()(0);
  }
  // |u(0)|^2 + |u(1)|^2 <= 2*coth(1) * ||u||_{H^1}^2 on H^1(0,1).
  rep.upper_const = 1.0 + 2.0 * (std::cosh(1.0) / std::sinh(1.0)) * m_norm * m_norm;
  const Matrix pv = v_projector(ts.v_space);
  std::mt19937_64 rng(seed);
  rep.samples = 24;
  for (int i = 0; i < rep.samples; ++i) {
    TestFunction1D u = random_function(rng);
    Eigen::Vector2cd xi = traces_of(u);
    Eigen::Vector2cd corr = pv * xi - xi;
    u = shift_traces(u, corr(0), corr(1));
    xi = traces_of(u);
    const double h1 = graph_inner(u, u).real();
    const double e0 = h1 + (ts.m * xi).squaredNorm();
    rep.worst_ratio = std::max(rep.worst_ratio, e0 / h1);
  }
  rep.valid = rep.worst_ratio <= rep.upper_const * (1.0 + 1e-9);
  return rep;
}

BlockOperator forward_h(const TraceSystem& ts) {
  const SpacePtr bd = bd_hilbert();
  const Eigen::Matrix2cd p = trace_matrix();
  const Matrix pv = v_projector(ts.v_space);
  const Matrix id2 = Matrix::Identity(2, 2);
  Matrix sign = Matrix::Zero(2, 2);
  sign(0, 0) = 1.0;
  sign(1, 1) = -1.0;
  Eigen::Matrix2cd swap;
  swap << 0.0, 1.0, 1.0, 0.0;

  // Unknown (x; y) in BD coordinates. Conditions:
  //   (1) traces of x lie in V;
  //   (2) gamma = M^dagger M * xi_x + (w(0), -w(1)) annihilates V,
  //       where w = Gdot y is the function with coordinates swap*y.
  const Matrix mtm = ts.m.adjoint() * ts.m;
  Matrix cond = Matrix::Zero(4, 4);
  cond.block(0, 0, 2, 2) = (id2 - pv) * p;
  cond.block(2, 0, 2, 2) = pv * mtm * p;
  cond.block(2, 2, 2, 2) = pv * sign * p * swap;
  SpacePtr prod = product_space(bd, bd);
  LinearRelation h{bd, bd, prod, kernel(prod, cond)};
  return BlockOperator{h, boundary_constraints(h)};
}

Matrix boundary_constraints(const LinearRelation& h) {
  // Left null space of the graph basis, pushed through the coordinate
  // change (u0,u1,w0,w1) -> (x;y).
  const Matrix basis = h.graph.basis;
  Eigen::JacobiSVD<Matrix> svd(basis, Eigen::ComputeFullU);
  const int k = numerical_rank(basis);
  Matrix ann = svd.matrixU().rightCols(4 - k).adjoint();

  const Eigen::Matrix2cd pinv = trace_matrix_inverse();
  Eigen::Matrix2cd swap;
  swap << 0.0, 1.0, 1.0, 0.0;
  Matrix change = Matrix::Zero(4, 4);
  change.block(0, 0, 2, 2) = pinv;
  change.block(2, 2, 2, 2) = swap * pinv;
  Matrix rows = ann * change;
  for (int i = 0; i < rows.rows(); ++i) rows.row(i) /= rows.row(i).norm();
  return rows;
}

BlockOperator block_operator_from_h(const LinearRelation& h) {
  return BlockOperator{h, boundary_constraints(h)};
}

TraceSystem reverse_construct(const LinearRelation& h) {
  MonotonicityReport rep = is_maximal_monotone(h);
  if (!rep.maximal) {
    std::string msg = "reverse_construct: boundary relation is not maximal monotone";
    if (rep.witness) msg += " (monotonicity witness available)";
    throw NotMaximalMonotoneError(msg);
  }
  if (!is_selfadjoint(h))
    throw NotSelfadjointError("reverse_construct: boundary relation is not selfadjoint");

  ArensDecomposition dec = decompose(h);
  const Matrix w = bd_hilbert()->gram();
  const Eigen::Matrix2cd pinv = trace_matrix_inverse();

  // V = trace pairs whose BD projection lies in U = D(sqrt(S)); since the
  // trace map is invertible on BD coordinates this is the image of U.
  TraceSystem ts;
  ts.v_space = image(euclidean_space(2), Matrix(trace_matrix()), dec.u_space);
  const int k = dec.u_space.dim();
  if (k == 0) {
    ts.m = Matrix(0, 2);
    return ts;
  }
  // Re-base U by the eigenvectors of S, eigenvalues descending, so the
  // output is unique up to the documented convention; rows belonging to
  // zero eigenvalues carry no information (K vanishes there) and are
  // dropped, making rank(M) the effective dimension of U.
  Eigen::SelfAdjointEigenSolver<Matrix> es(dec.s_matrix);
  Matrix vec = es.eigenvectors().rowwise().reverse();
  Eigen::VectorXd val = es.eigenvalues().reverse();
  Matrix basis = dec.u_space.basis * vec;
  const double scale = std::max(1.0, val.cwiseAbs().maxCoeff());
  int rank = 0;
  while (rank < k && val(rank) > kRankTol * scale) ++rank;
  Eigen::VectorXd root = val.head(rank).cwiseMax(0.0).cwiseSqrt();
  ts.m = root.cast<Complex>().asDiagonal() *
         Matrix(basis.leftCols(rank).adjoint() * w * pinv);
  if (rank == 0) ts.m = Matrix(0, 2);
  return ts;
}

std::pair<bool, bool> domain_membership(const BlockOperator& b,
                                        const std::optional<TraceSystem>& ts,
                                        const TestFunction1D& u,
                                        const TestFunction1D& w,
                                        double tol) {
  const Eigen::Matrix2cd pinv = trace_matrix_inverse();
  Eigen::Matrix2cd swap;
  swap << 0.0, 1.0, 1.0, 0.0;
  const Eigen::Vector2cd xi_u = traces_of(u), xi_w = traces_of(w);

  CVector z(4);
  z.head(2) = pinv * xi_u;
  z.tail(2) = swap * pinv * xi_w;
  const CVector resid = z - project(b.h.graph, z);
  const double zn = std::max(1.0, b.h.prod->norm(z));
  const bool second = b.h.prod->norm(resid) <= tol * zn;

  bool first = second;
  if (ts) {
    const Matrix pv = v_projector(ts->v_space);
    const bool in_v =
        ((Matrix::Identity(2, 2) - pv) * xi_u).norm() <= tol * std::max(1.0, xi_u.norm());
    CVector gamma = ts->m.adjoint() * (ts->m * xi_u);
    gamma(0) += xi_w(0);
    gamma(1) -= xi_w(1);
    const bool annihilates =
        (pv * gamma).norm() <= tol * std::max(1.0, gamma.norm());
    first = in_v && annihilates;
  }
  return {first, second};
}

std::pair<TestFunction1D, TestFunction1D> sample_domain_pair(
    const BlockOperator& b, std::mt19937_64& rng, bool member) {
  TestFunction1D u = random_function(rng), w = random_function(rng);
  CVector xi(4);
  xi << u(0.0), u(1.0), w(0.0), w(1.0);
  // Minimal trace correction onto the constraint null space.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(b.constraints);
  CVector delta = -cod.solve(Matrix(b.constraints * xi));
  u = shift_traces(u, delta(0), delta(1));
  w = shift_traces(w, delta(2), delta(3));
  if (!member) {
    std::normal_distribution<double> dist(0.0, 1.0);
    CVector e(b.constraints.rows());
    for (int i = 0; i < e.size(); ++i) e(i) = Complex(dist(rng), dist(rng));
    CVector eta = b.constraints.adjoint() * e;
    eta *= (1.0 + std::abs(dist(rng))) / eta.norm();
    u = shift_traces(u, eta(0), eta(1));
    w = shift_traces(w, eta(2), eta(3));
  }
  return {u, w};
}

LinearRelation h_dirichlet() {
  const SpacePtr bd = bd_hilbert();
  Matrix span = Matrix::Zero(4, 2);
  span.bottomRows(2) = Matrix::Identity(2, 2);
  return make_relation(bd, bd, span);
}

LinearRelation h_neumann() {
  const SpacePtr bd = bd_hilbert();
  Matrix span = Matrix::Zero(4, 2);
  span.topRows(2) = Matrix::Identity(2, 2);
  return make_relation(bd, bd, span);
}

LinearRelation h_full_trace() {
  const double coth1 = std::cosh(1.0) / std::sinh(1.0);
  Matrix t(2, 2);
  t << 2.0 * coth1, 1.0, -1.0, 0.0;
  return graph_of(bd_hilbert(), t);
}

LinearRelation h_robin(double k) {
  // y'(0) = 0 and y'(1) = k * x(1) on coordinate pairs (x; y).
  const double c1 = std::cosh(1.0), s1 = std::sinh(1.0);
  Matrix cond = Matrix::Zero(2, 4);
  cond(0, 3) = 1.0;                      // y'(0) = b_y
  cond(1, 2) = s1;                       // y'(1) = a_y sinh1 + b_y cosh1
  cond(1, 3) = c1;
  cond(1, 0) = -k * c1;                  // minus k * x(1)
  cond(1, 1) = -k * s1;
  const SpacePtr bd = bd_hilbert();
  SpacePtr prod = product_space(bd, bd);
  return LinearRelation{bd, bd, prod, kernel(prod, cond)};
}

LinearRelation h_skew() {
  Matrix k(2, 2);
  k << 0.0, 1.0, -1.0, 0.0;
  Matrix t = bd_hilbert()->gram().inverse() * k;  // Gram-skew operator
  return graph_of(bd_hilbert(), t);
}

LinearRelation h_random_selfadjoint(int u_dim, std::uint64_t seed) {
  if (u_dim < 0 || u_dim > 2)
    throw std::invalid_argument("h_random_selfadjoint: u_dim must be 0, 1 or 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix span(2, u_dim);
  for (int j = 0; j < u_dim; ++j)
    for (int i = 0; i < 2; ++i) span(i, j) = Complex(dist(rng), dist(rng));
  Subspace u = orthonormal_basis(bd_hilbert(), span);
  Matrix y(u.dim(), u.dim());
  for (int j = 0; j < u.dim(); ++j)
    for (int i = 0; i < u.dim(); ++i) y(i, j) = Complex(dist(rng), dist(rng));
  Matrix s = u.dim() > 0 ? Matrix(y.adjoint() * y / double(u.dim()))
                         : Matrix(0, 0);
  Subspace mult = complement(u);
  Matrix rel_span = Matrix::Zero(4, u.dim() + mult.dim());
  rel_span.block(0, 0, 2, u.dim()) = u.basis;
  rel_span.block(2, 0, 2, u.dim()) = u.basis * s;
  rel_span.block(2, u.dim(), 2, mult.dim()) = mult.basis;
  return make_relation(bd_hilbert(), bd_hilbert(), rel_span);
}

TraceSystem ts_dirichlet() {
  return make_trace_system(Matrix(2, 0), Matrix(0, 2));
}

TraceSystem ts_neumann() {
  return make_trace_system(Matrix::Identity(2, 2), Matrix(0, 2));
}

TraceSystem ts_full_trace() {
  return make_trace_system(Matrix::Identity(2, 2), Matrix::Identity(2, 2));
}

}  // namespace monorel
