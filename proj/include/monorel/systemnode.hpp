#pragma once

#include <optional>
#include <random>
#include <utility>

#include "monorel/arens.hpp"
#include "monorel/bdspace.hpp"
#include "monorel/relation.hpp"

namespace monorel {

struct MalformedScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// BD(G) as a HilbertSpace: C^2 in the {cosh, sinh} basis with the
/// graph-norm Gram matrix.
SpacePtr bd_hilbert();

/// Coordinates -> endpoint traces: rows (eval at 0, eval at 1).
Eigen::Matrix2cd trace_matrix();
Eigen::Matrix2cd trace_matrix_inverse();

/// Finite-rank boundary-trace family (V, M) describing a trace system:
/// E0 = {u in H^1 : (u(0), u(1)) in V}, L = d/dx restricted to E0,
/// K u = M * (u(0), u(1)).
struct TraceSystem {
  Subspace v_space;  // subspace of C^2, standard inner product
  Matrix m;          // u_dim x 2
};

/// Validates the V basis (rank) and the shape of M.
TraceSystem make_trace_system(const Matrix& v_span, const Matrix& m);

struct HypothesisReport {
  bool valid = false;
  int samples = 0;
  double upper_const = 1.0;    // proven bound 1 + 2*coth(1)*||M||^2
  double worst_ratio = 1.0;    // max sampled E0-norm^2 / H1-norm^2
};

/// Checks the standing hypothesis for the trace family: V well formed,
/// M shape, and the sampled norm equivalence between the E0 graph norm
/// and the H^1 norm (lower constant 1 by construction).
HypothesisReport check_hypothesis(const TraceSystem& ts, std::uint64_t seed = 1);

/// Boundary relation h on BD(G) plus the endpoint constraint matrix
/// carving out D(A) from trace quadruples (u(0), u(1), w(0), w(1)).
struct BlockOperator {
  LinearRelation h;
  Matrix constraints;  // rows annihilate admissible trace quadruples
};

/// Forward direction: the boundary relation of a trace system,
/// h = {(x,y) : traces of x lie in V and the boundary part of the
/// dual-pairing functional annihilates E0}.
BlockOperator forward_h(const TraceSystem& ts);

BlockOperator block_operator_from_h(const LinearRelation& h);

/// Constraint matrix on (u(0), u(1), w(0), w(1)); rank 4 - dim(graph h).
Matrix boundary_constraints(const LinearRelation& h);

/// Reverse direction: recovers a trace system from a maximal monotone
/// selfadjoint boundary relation via its operator-part decomposition
/// and the square root of the operator part. M is expressed in the
/// eigenbasis of the operator part, eigenvalues descending.
TraceSystem reverse_construct(const LinearRelation& h);

/// Evaluates both characterizations of (u, w) in D(A):
///  first:  traces of u in V and the boundary coefficient
///          M^dagger M xi_u + (w(0), -w(1)) annihilates V;
///  second: the BD-coordinate pair of (u, w) lies in graph(h).
std::pair<bool, bool> domain_membership(const BlockOperator& b,
                                        const std::optional<TraceSystem>& ts,
                                        const TestFunction1D& u,
                                        const TestFunction1D& w,
                                        double tol = 1e-10);

/// Draws a closed-form pair and corrects its endpoint traces minimally
/// so that it lies in (member) or visibly outside (non-member) D(A).
std::pair<TestFunction1D, TestFunction1D> sample_domain_pair(
    const BlockOperator& b, std::mt19937_64& rng, bool member);

// Scenario factory (all on bd_hilbert()).
LinearRelation h_dirichlet();
LinearRelation h_neumann();
LinearRelation h_full_trace();
/// Conditions y'(0) = 0, y'(1) = k * x(1).
LinearRelation h_robin(double k);
/// Maximal monotone but not selfadjoint (Gram-skew operator).
LinearRelation h_skew();
/// Random selfadjoint monotone h with a given operator-part dimension.
LinearRelation h_random_selfadjoint(int u_dim, std::uint64_t seed);

TraceSystem ts_dirichlet();
TraceSystem ts_neumann();
TraceSystem ts_full_trace();

}  // namespace monorel
