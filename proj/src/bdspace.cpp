#include "monorel/bdspace.hpp"

#include <cmath>

namespace monorel {

namespace {

Quadrature build_gauss_legendre(int n) {
  // Nodes on (-1,1) by Newton iteration on P_n, then mapped to (0,1).
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = 0.5 * (x + 1.0);
    q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // includes the 1/2 map factor
  }
  return q;
}

}  // namespace

const Quadrature& gauss_legendre_64() {
  static const Quadrature q = build_gauss_legendre(64);
  return q;
}

TestFunction1D TestFunction1D::polynomial(const std::vector<Complex>& coeffs) {
  if (coeffs.size() > 7)
    throw std::invalid_argument("TestFunction1D: polynomial degree above 6");
  TestFunction1D f;
  for (size_t k = 0; k < coeffs.size(); ++k) f.poly[k] = coeffs[k];
  return f;
}

TestFunction1D TestFunction1D::cosh_fn() {
  TestFunction1D f;
  f.cosh_coeff = 1.0;
  return f;
}

TestFunction1D TestFunction1D::sinh_fn() {
  TestFunction1D f;
  f.sinh_coeff = 1.0;
  return f;
}

Complex TestFunction1D::operator()(double x) const {
  Complex v = 0.0;
  double xk = 1.0;
  for (int k = 0; k < 7; ++k) {
    v += poly[k] * xk;
    xk *= x;
  }
  return v + cosh_coeff * std::cosh(x) + sinh_coeff * std::sinh(x);
}

TestFunction1D TestFunction1D::derivative() const {
  TestFunction1D d;
  for (int k = 1; k < 7; ++k) d.poly[k - 1] = poly[k] * double(k);
  d.cosh_coeff = sinh_coeff;
  d.sinh_coeff = cosh_coeff;
  return d;
}

TestFunction1D TestFunction1D::operator+(const TestFunction1D& o) const {
  TestFunction1D r = *this;
  for (int k = 0; k < 7; ++k) r.poly[k] += o.poly[k];
  r.cosh_coeff += o.cosh_coeff;
  r.sinh_coeff += o.sinh_coeff;
  return r;
}

TestFunction1D TestFunction1D::operator-(const TestFunction1D& o) const {
  return *this + o * Complex(-1.0);
}

TestFunction1D TestFunction1D::operator*(Complex s) const {
  TestFunction1D r = *this;
  for (int k = 0; k < 7; ++k) r.poly[k] *= s;
  r.cosh_coeff *= s;
  r.sinh_coeff *= s;
  return r;
}

bool TestFunction1D::is_zero(double tol) const {
  for (int k = 0; k < 7; ++k)
    if (std::abs(poly[k]) > tol) return false;
  return std::abs(cosh_coeff) <= tol && std::abs(sinh_coeff) <= tol;
}

Complex l2_inner(const TestFunction1D& f, const TestFunction1D& g) {
  const Quadrature& q = gauss_legendre_64();
  Complex s = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i)
    s += q.weights[i] * std::conj(f(q.nodes[i])) * g(q.nodes[i]);
  return s;
}

Complex graph_inner(const TestFunction1D& f, const TestFunction1D& g) {
  return l2_inner(f, g) + l2_inner(f.derivative(), g.derivative());
}

Eigen::Matrix2d bd_gram() {
  const double s = std::sinh(2.0) / 2.0;
  const double c = std::sinh(1.0) * std::sinh(1.0);
  Eigen::Matrix2d g;
  g << s, c, c, s;
  return g;
}

BoundarySpace boundary_space(BoundaryKind kind) {
  BoundarySpace sp;
  sp.kind = kind;
  sp.gram = bd_gram();
  const double c1 = std::cosh(1.0), s1 = std::sinh(1.0);
  sp.eval0 << 1.0, 0.0;
  sp.eval1 << c1, s1;
  sp.deval0 << 0.0, 1.0;
  sp.deval1 << s1, c1;
  return sp;
}

BDVector project_boundary(BoundaryKind kind, Complex trace0, Complex trace1) {
  const double c1 = std::cosh(1.0), s1 = std::sinh(1.0);
  BDVector v;
  v.kind = kind;
  v.coords(0) = trace0;
  v.coords(1) = (trace1 - trace0 * c1) / s1;
  return v;
}

BDVector apply_gdot(const BDVector& x) {
  if (x.kind != BoundaryKind::G)
    throw std::invalid_argument("apply_gdot: expected a BD(G) vector");
  return BDVector{BoundaryKind::D, Eigen::Vector2cd(x.coords(1), x.coords(0))};
}

BDVector apply_ddot(const BDVector& z) {
  if (z.kind != BoundaryKind::D)
    throw std::invalid_argument("apply_ddot: expected a BD(D) vector");
  return BDVector{BoundaryKind::G, Eigen::Vector2cd(z.coords(1), z.coords(0))};
}

Complex boundary_eval(const BDVector& x, EvalWhat what, int point) {
  const BoundarySpace sp = boundary_space(x.kind);
  const Eigen::RowVector2d& row = (what == EvalWhat::Value)
                                      ? (point == 0 ? sp.eval0 : sp.eval1)
                                      : (point == 0 ? sp.deval0 : sp.deval1);
  return row(0) * x.coords(0) + row(1) * x.coords(1);
}

TestFunction1D bd_function(const BDVector& x) {
  return TestFunction1D::cosh_fn() * x.coords(0) +
         TestFunction1D::sinh_fn() * x.coords(1);
}

}  // namespace monorel
