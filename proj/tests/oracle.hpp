#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library except where a test is explicitly about consistency.

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

/// integral_{-1}^{1} (1 - x)^a (1 + x)^b x^k dx with b = 0, in 50 digits.
inline Big jacobi_monomial_moment(double a, int k) {
  // x = 1 - 2y: 2^(a+1) sum_i C(k,i) (-2)^i / (a + i + 1)
  Big sum = 0;
  Big binom = 1;
  Big pow2 = 1;
  const Big A = a;
  for (int i = 0; i <= k; ++i) {
    sum += binom * pow2 / (A + i + 1);
    binom = binom * (k - i) / (i + 1);
    pow2 *= -2;
  }
  return boost::multiprecision::pow(Big(2), A + 1) * sum;
}

/// Adaptive integral of g over [a, b]; the integrand may be singular at the
/// endpoints.
inline double endpoint_singular(const std::function<double(double)>& g, double a, double b, double tol = 1e-14) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  return integrator.integrate(g, a, b, tol);
}

/// Like endpoint_singular, for integrands singular at b: g(x, b - x) gets the
/// distance to b without cancellation.
inline double right_singular(const std::function<double(double, double)>& g, double a, double b,
                             double tol = 1e-14) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  return integrator.integrate(
      [&](double x, double xc) { return g(x, xc > 0.0 ? xc : b - x); }, a, b, tol);
}

/// Adaptive Gauss-Kronrod for smooth integrands.
inline double smooth(const std::function<double(double)>& g, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 20, 1e-14);
}

/// integral over [a, b] of (t - s)^(alpha - 1) phi(s) ds for t >= b, done in
/// v = t - s so the near-singular end is resolved in v.
inline double weakly_singular(const std::function<double(double)>& phi, double a, double b, double t, double alpha) {
  auto g = [&](double v) { return std::pow(v, alpha - 1.0) * phi(t - v); };
  return endpoint_singular(g, t - b, t - a);
}

/// Lagrange basis polynomial l_j for the given nodes.
inline double lagrange(const std::vector<double>& nodes, std::size_t j, double s) {
  double out = 1.0;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (m != j) out *= (s - nodes[m]) / (nodes[j] - nodes[m]);
  }
  return out;
}

/// Legendre polynomial by the explicit sum, independent of the library.
inline double legendre(int k, double x) {
  double p0 = 1.0, p1 = x;
  if (k == 0) return p0;
  for (int n = 2; n <= k; ++n) {
    const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace oracle
