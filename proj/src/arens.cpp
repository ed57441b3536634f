#include "monorel/arens.hpp"

#include <Eigen/Eigenvalues>

namespace monorel {

ArensDecomposition decompose(const LinearRelation& c) {
  if (!is_selfadjoint(c))
    throw NotSelfadjointError("decompose: relation is not selfadjoint");
  ArensDecomposition dec;
  dec.space = c.src;
  dec.u_space = domain(c);
  // C[{0}] must equal U^perp for a selfadjoint relation.
  Subspace mult = post_set(c, zero_subspace(c.src));
  Subspace comp = complement(dec.u_space);
  if (!subspace_equal(mult, comp, 1e-10))
    throw InconsistencyError("decompose: C[{0}] differs from U^perp");
  dec.mult_part = comp;

  const int k = dec.u_space.dim();
  if (k == 0) {
    dec.s_matrix = Matrix(0, 0);
    return dec;
  }
  // Operator part: graph intersected with U (+) U.
  Matrix uu = Matrix::Zero(2 * c.src->dim(), 2 * k);
  uu.topLeftCorner(c.src->dim(), k) = dec.u_space.basis;
  uu.bottomRightCorner(c.src->dim(), k) = dec.u_space.basis;
  Subspace op = intersect(c.graph, orthonormal_basis(c.prod, uu));
  if (op.dim() != k)
    throw InconsistencyError("decompose: operator part has wrong dimension");
  Matrix p = op.basis.topRows(c.src->dim());
  Matrix q = op.basis.bottomRows(c.src->dim());
  Matrix cp = dec.u_space.basis.adjoint() * c.src->gram() * p;
  Matrix cq = dec.u_space.basis.adjoint() * c.src->gram() * q;
  Matrix s = cq * cp.inverse();
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - Matrix(s.adjoint())).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw InconsistencyError("decompose: operator part is not Hermitian");
  dec.s_matrix = (s + Matrix(s.adjoint())) / 2.0;
  return dec;
}

LinearRelation reconstruct(const ArensDecomposition& dec) {
  const int n = dec.space->dim();
  const int k = dec.u_space.dim(), m = dec.mult_part.dim();
  Matrix span = Matrix::Zero(2 * n, k + m);
  span.topLeftCorner(n, k) = dec.u_space.basis;
  span.bottomLeftCorner(n, k) = dec.u_space.basis * dec.s_matrix;
  span.bottomRightCorner(n, m) = dec.mult_part.basis;
  return make_relation(dec.space, dec.space, span);
}

Matrix sqrt_operator(const ArensDecomposition& dec) {
  const int k = dec.u_space.dim();
  if (k == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(dec.s_matrix);
  Eigen::VectorXd ev = es.eigenvalues();
  const double floor = -1e-11 * std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  for (int i = 0; i < k; ++i) {
    if (ev(i) < floor)
      throw NotMonotoneError("sqrt_operator: operator part has a negative eigenvalue");
    ev(i) = std::sqrt(std::max(0.0, ev(i)));
  }
  return es.eigenvectors() * ev.asDiagonal() *
         Matrix(es.eigenvectors().adjoint());
}

}  // namespace monorel
