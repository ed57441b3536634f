#pragma once

#include <array>
#include <vector>

#include "monorel/hilbert.hpp"

namespace monorel {

/// Fixed-order Gauss-Legendre rule on (0, 1).
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Quadrature& gauss_legendre_64();

/// Element of span{polynomials of degree <= 6, cosh, sinh} on (0, 1).
/// Closed under differentiation; supports exact endpoint traces.
class TestFunction1D {
public:
  TestFunction1D() = default;

  static TestFunction1D polynomial(const std::vector<Complex>& coeffs);
  static TestFunction1D cosh_fn();
  static TestFunction1D sinh_fn();

  Complex operator()(double x) const;
  TestFunction1D derivative() const;

  TestFunction1D operator+(const TestFunction1D& o) const;
  TestFunction1D operator-(const TestFunction1D& o) const;
  TestFunction1D operator*(Complex s) const;

  bool is_zero(double tol = 0.0) const;

  std::array<Complex, 7> poly{};  // poly[k] multiplies x^k
  Complex cosh_coeff{};
  Complex sinh_coeff{};
};

/// L2(0,1) inner product, conjugate linear in the first argument.
Complex l2_inner(const TestFunction1D& f, const TestFunction1D& g);
/// Graph inner product <f|g> + <f'|g'>.
Complex graph_inner(const TestFunction1D& f, const TestFunction1D& g);

enum class BoundaryKind { G, D };
enum class EvalWhat { Value, Derivative };

/// The two-dimensional boundary data space in the basis {cosh, sinh},
/// identical Gram for both kinds in the 1D instance.
struct BoundarySpace {
  BoundaryKind kind;
  Eigen::Matrix2d gram;
  Eigen::RowVector2d eval0, eval1;    // value functionals at x = 0, 1
  Eigen::RowVector2d deval0, deval1;  // derivative functionals
};

BoundarySpace boundary_space(BoundaryKind kind);

/// [[sinh(2)/2, sinh(1)^2], [sinh(1)^2, sinh(2)/2]], the graph-norm Gram
/// of {cosh, sinh}; the same matrix for both boundary kinds.
Eigen::Matrix2d bd_gram();

struct BDVector {
  BoundaryKind kind;
  Eigen::Vector2cd coords;  // a*cosh + b*sinh
};

/// The unique a*cosh + b*sinh matching the endpoint traces; this equals
/// the graph-orthogonal projection of any H^1 function with those traces.
BDVector project_boundary(BoundaryKind kind, Complex trace0, Complex trace1);

/// Differentiation BD(G) -> BD(D); coordinates (a,b) -> (b,a).
BDVector apply_gdot(const BDVector& x);
/// Differentiation BD(D) -> BD(G), the adjoint and inverse of apply_gdot.
BDVector apply_ddot(const BDVector& z);

Complex boundary_eval(const BDVector& x, EvalWhat what, int point);

/// The BD element as a closed-form function.
TestFunction1D bd_function(const BDVector& x);

}  // namespace monorel
