#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <stdexcept>

namespace monorel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Singular values below kRankTol * (largest singular value) count as zero.
inline constexpr double kRankTol = 1e-10;

class HilbertSpace;
using SpacePtr = std::shared_ptr<const HilbertSpace>;

/// Finite-dimensional complex Hilbert space with a Hermitian positive
/// definite Gram matrix. The inner product is conjugate linear in the
/// first argument: inner(x, y) = x^dagger * gram * y.
class HilbertSpace {
public:
  explicit HilbertSpace(Matrix gram);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }

  Complex inner(const CVector& x, const CVector& y) const;
  double norm(const CVector& x) const;

  /// Coordinates in which the Gram matrix becomes the identity:
  /// to_ortho(x) = R x with gram = R^dagger R (Cholesky).
  CVector to_ortho(const CVector& x) const { return chol_ * x; }
  CVector from_ortho(const CVector& y) const;
  Matrix to_ortho_mat(const Matrix& m) const { return chol_ * m; }
  Matrix from_ortho_mat(const Matrix& m) const;

private:
  Matrix gram_;
  Matrix chol_;  // upper triangular, gram = chol_^dagger * chol_
};

SpacePtr make_space(Matrix gram);
SpacePtr euclidean_space(int dim);
/// Block-diagonal Gram of the product a (+) b.
SpacePtr product_space(const SpacePtr& a, const SpacePtr& b);

/// Subspace given by a Gram-orthonormal basis matrix (dim x k).
struct Subspace {
  SpacePtr space;
  Matrix basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient_dim() const { return space->dim(); }
};

/// Gram-orthonormal basis of the column span of `spanning` (modified
/// Gram-Schmidt in Cholesky-transformed coordinates, one
/// reorthogonalization pass). Zero input yields the zero subspace.
Subspace orthonormal_basis(const SpacePtr& space, const Matrix& spanning);

Subspace zero_subspace(const SpacePtr& space);
Subspace full_subspace(const SpacePtr& space);

/// Gram-orthogonal complement.
Subspace complement(const Subspace& sub);

/// Largest principal angle between two subspaces of the same space,
/// computed with the sine-based formula (accurate near zero).
double largest_principal_angle(const Subspace& a, const Subspace& b);

/// True iff dims agree and the largest principal angle is < tol.
bool subspace_equal(const Subspace& a, const Subspace& b, double tol);

/// Span of map * basis, as a subspace of dst.
Subspace image(const SpacePtr& dst, const Matrix& map, const Subspace& sub);

/// {x in src : map * x in sub}.
Subspace preimage(const SpacePtr& src, const Matrix& map, const Subspace& sub);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// Null space of an arbitrary matrix, orthonormalized in `space`
/// (space.dim() must equal the column count of a).
Subspace kernel(const SpacePtr& space, const Matrix& a);

/// Gram-orthogonal projection matrix onto sub: P = B B^dagger G.
Matrix projector(const Subspace& sub);
CVector project(const Subspace& sub, const CVector& x);

/// Numerical rank with the relative singular-value threshold kRankTol.
int numerical_rank(const Matrix& m);

}  // namespace monorel
