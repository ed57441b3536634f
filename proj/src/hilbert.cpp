#include "monorel/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace monorel {

HilbertSpace::HilbertSpace(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols())
    throw std::invalid_argument("HilbertSpace: gram must be square and nonempty");
  const double scale = gram_.cwiseAbs().maxCoeff();
  if ((gram_ - gram_.adjoint()).cwiseAbs().maxCoeff() > 1e-14 * std::max(scale, 1.0))
    throw std::invalid_argument("HilbertSpace: gram is not Hermitian");
  gram_ = (gram_ + Matrix(gram_.adjoint())) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram_);
  const auto& ev = es.eigenvalues();
  if (ev(0) <= 1e-12 * ev(ev.size() - 1))
    throw std::invalid_argument("HilbertSpace: gram is not positive definite");
  Eigen::LLT<Matrix> llt(gram_);
  chol_ = llt.matrixU();
}

Complex HilbertSpace::inner(const CVector& x, const CVector& y) const {
  return (x.adjoint() * gram_ * y)(0);
}

double HilbertSpace::norm(const CVector& x) const {
  return std::sqrt(std::max(0.0, inner(x, x).real()));
}

CVector HilbertSpace::from_ortho(const CVector& y) const {
  return chol_.triangularView<Eigen::Upper>().solve(y);
}

Matrix HilbertSpace::from_ortho_mat(const Matrix& m) const {
  return chol_.triangularView<Eigen::Upper>().solve(m);
}

SpacePtr make_space(Matrix gram) {
  return std::make_shared<HilbertSpace>(std::move(gram));
}

SpacePtr euclidean_space(int dim) {
  return make_space(Matrix::Identity(dim, dim));
}

SpacePtr product_space(const SpacePtr& a, const SpacePtr& b) {
  const int n = a->dim(), m = b->dim();
  Matrix g = Matrix::Zero(n + m, n + m);
  g.topLeftCorner(n, n) = a->gram();
  g.bottomRightCorner(m, m) = b->gram();
  return make_space(std::move(g));
}

Subspace orthonormal_basis(const SpacePtr& space, const Matrix& spanning) {
  if (spanning.rows() != space->dim())
    throw std::invalid_argument("orthonormal_basis: row count mismatch");
  Matrix y = space->to_ortho_mat(spanning);
  double scale = 0.0;
  for (int j = 0; j < y.cols(); ++j) scale = std::max(scale, y.col(j).norm());
  Matrix q(space->dim(), std::min<Eigen::Index>(y.cols(), space->dim()));
  int k = 0;
  if (scale > 0.0) {
    for (int j = 0; j < y.cols() && k < q.cols(); ++j) {
      CVector v = y.col(j);
      if (k > 0) {
        v -= q.leftCols(k) * (q.leftCols(k).adjoint() * v);
        v -= q.leftCols(k) * (q.leftCols(k).adjoint() * v);  // reorthogonalize
      }
      const double nv = v.norm();
      if (nv > kRankTol * scale) q.col(k++) = v / nv;
    }
  }
  return Subspace{space, space->from_ortho_mat(q.leftCols(k))};
}

Subspace zero_subspace(const SpacePtr& space) {
  return Subspace{space, Matrix(space->dim(), 0)};
}

Subspace full_subspace(const SpacePtr& space) {
  return orthonormal_basis(space, Matrix::Identity(space->dim(), space->dim()));
}

Subspace complement(const Subspace& sub) {
  const int n = sub.ambient_dim(), k = sub.dim();
  if (k == 0) return full_subspace(sub.space);
  Matrix q = sub.space->to_ortho_mat(sub.basis);
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ();
  return Subspace{sub.space, sub.space->from_ortho_mat(full.rightCols(n - k))};
}

double largest_principal_angle(const Subspace& a, const Subspace& b) {
  if (a.dim() == 0 && b.dim() == 0) return 0.0;
  if (a.dim() != b.dim()) return M_PI / 2;
  Matrix qa = a.space->to_ortho_mat(a.basis);
  Matrix qb = b.space->to_ortho_mat(b.basis);
  Matrix resid = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<Matrix> svd(resid);
  const double s = std::min(1.0, svd.singularValues()(0));
  return std::asin(s);
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return largest_principal_angle(a, b) < tol;
}

Subspace image(const SpacePtr& dst, const Matrix& map, const Subspace& sub) {
  return orthonormal_basis(dst, map * sub.basis);
}

Subspace preimage(const SpacePtr& src, const Matrix& map, const Subspace& sub) {
  // map x in colspan(basis)  <=>  (I - B B^+) map x = 0.
  Matrix resid = map;
  if (sub.dim() > 0) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(sub.basis);
    resid = map - sub.basis * cod.solve(map);
  }
  return kernel(src, resid);
}

Subspace kernel(const SpacePtr& space, const Matrix& a) {
  if (a.rows() == 0) return full_subspace(space);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * smax) ++r;
  if (smax == 0.0) r = 0;
  Matrix v = svd.matrixV();
  return orthonormal_basis(space, v.rightCols(v.cols() - r));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.dim() == 0 || b.dim() == 0) return zero_subspace(a.space);
  Matrix stacked(a.ambient_dim(), a.dim() + b.dim());
  stacked << a.basis, -b.basis;
  Subspace coeff = kernel(euclidean_space(a.dim() + b.dim()), stacked);
  return orthonormal_basis(a.space, a.basis * coeff.basis.topRows(a.dim()));
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  Matrix stacked(a.ambient_dim(), a.dim() + b.dim());
  stacked << a.basis, b.basis;
  return orthonormal_basis(a.space, stacked);
}

Matrix projector(const Subspace& sub) {
  return sub.basis * sub.basis.adjoint() * sub.space->gram();
}

CVector project(const Subspace& sub, const CVector& x) {
  if (sub.dim() == 0) return CVector::Zero(sub.ambient_dim());
  return sub.basis * (sub.basis.adjoint() * (sub.space->gram() * x));
}

int numerical_rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * sv(0)) ++r;
  return r;
}

}  // namespace monorel
