#pragma once

#include "monorel/relation.hpp"

namespace monorel {

/// Splitting of a selfadjoint relation C into an operator part S on
/// U = closure of dom(C) plus the pure multivalued part {0} x U^perp.
struct ArensDecomposition {
  SpacePtr space;
  Subspace u_space;    // Gram-orthonormal basis of U
  Matrix s_matrix;     // Hermitian, coordinates of S in the u_space basis
  Subspace mult_part;  // U^perp
};

/// Throws NotSelfadjointError when C != C*. The operator part is
/// extracted by intersecting the graph with U (+) U.
ArensDecomposition decompose(const LinearRelation& c);

LinearRelation reconstruct(const ArensDecomposition& dec);

/// Hermitian PSD square root of s_matrix via eigendecomposition;
/// eigenvalues in [-1e-11, 0] are clamped to zero, anything below
/// throws NotMonotoneError. In finite dimension D(sqrt(S)) = U.
Matrix sqrt_operator(const ArensDecomposition& dec);

}  // namespace monorel
