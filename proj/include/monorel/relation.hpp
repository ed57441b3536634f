#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monorel/hilbert.hpp"

namespace monorel {

struct NotSelfadjointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotMaximalMonotoneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotMonotoneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Verdicts of logically equivalent maximality criteria disagree; this
/// signals a tolerance bug in the toolkit, never a mathematical fact.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A linear relation C, i.e. a subspace of src (+) dst viewed as a
/// possibly multivalued linear operator.
struct LinearRelation {
  SpacePtr src;
  SpacePtr dst;
  SpacePtr prod;    // src (+) dst, block-diagonal Gram
  Subspace graph;   // Gram-orthonormal basis in prod

  int graph_dim() const { return graph.dim(); }
  /// src-components of the graph basis columns.
  Matrix first_block() const { return graph.basis.topRows(src->dim()); }
  /// dst-components of the graph basis columns.
  Matrix second_block() const { return graph.basis.bottomRows(dst->dim()); }
};

/// Relation spanned by the columns of pair_span (src.dim + dst.dim rows).
LinearRelation make_relation(const SpacePtr& src, const SpacePtr& dst,
                             const Matrix& pair_span);
/// Graph of a matrix acting src -> dst.
LinearRelation graph_of(const SpacePtr& src, const SpacePtr& dst, const Matrix& a);
LinearRelation graph_of(const SpacePtr& space, const Matrix& a);
/// The purely multivalued relation {0} x W.
LinearRelation zero_times(const SpacePtr& space, const Subspace& w);

bool relation_equal(const LinearRelation& a, const LinearRelation& b, double tol);

/// Adjoint relation, computed from the defining identity
/// <v|x>_dst = <u|y>_src for all (u,v) in C. For src == dst this agrees
/// with the Gram-orthogonal complement of the flipped-negated graph,
/// available separately as adjoint_via_complement for cross-validation.
LinearRelation adjoint(const LinearRelation& c);
LinearRelation adjoint_via_complement(const LinearRelation& c);

LinearRelation inverse(const LinearRelation& c);
/// 1 + lambda*C = {(u, u + lambda v) : (u,v) in C}; requires src == dst.
LinearRelation one_plus(const LinearRelation& c, double lambda);
LinearRelation compose(const LinearRelation& c2, const LinearRelation& c1);

/// Pre-set [M]C = {x : exists y in M with (x,y) in C}.
Subspace pre_set(const LinearRelation& c, const Subspace& m);
/// Post-set C[N] = {y : exists x in N with (x,y) in C}.
Subspace post_set(const LinearRelation& c, const Subspace& n);
Subspace domain(const LinearRelation& c);
Subspace range(const LinearRelation& c);

struct MonotonicityReport {
  bool monotone = false;
  bool maximal = false;
  /// Pair (x,y) in C with Re<x|y> < 0, present iff not monotone.
  std::optional<std::pair<CVector, CVector>> witness;
  std::vector<double> minty_lambdas_checked;
};

/// Monotonicity via the eigenvalues of the Hermitian part of the graph
/// form; exact for linear relations and yields a witness on failure.
MonotonicityReport is_monotone(const LinearRelation& c);

/// Minty: maximal iff monotone and 1 + lambda*C is onto. Checked for
/// lambda in {0.1, 1, 10} and against the closed-linear criterion
/// (C and C* both monotone); any disagreement throws InconsistencyError.
MonotonicityReport is_maximal_monotone(const LinearRelation& c);

bool is_selfadjoint(const LinearRelation& c, double tol = 1e-10);

/// u = (1 + lambda C)^{-1} y. Refuses non-maximal input instead of
/// producing a least-squares pseudo-solution.
CVector resolvent_apply(const LinearRelation& c, double lambda, const CVector& y);

/// Matrix of the resolvent map in the coordinates of src.
Matrix resolvent_matrix(const LinearRelation& c, double lambda);
/// Gram operator norm of a matrix acting on a single space.
double operator_norm(const SpacePtr& space, const Matrix& a);

enum class RandomKind { Operator, Relation, Selfadjoint };

/// Deterministic random monotone relation on a random-Gram space.
///  - Operator: graph of W^{-1}(B + N), B Hermitian PSD, N skew.
///  - Relation: the same operator restricted to a random subspace V,
///    plus a multivalued part {0} x W' with W' inside the Gram
///    complement of V (keeps monotonicity, often breaks maximality).
///  - Selfadjoint: S (+) ({0} x U^perp) with S Hermitian PSD on a
///    random subspace U.
LinearRelation random_monotone(int dim, RandomKind kind, std::uint64_t seed);

}  // namespace monorel
