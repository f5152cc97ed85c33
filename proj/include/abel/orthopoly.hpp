#pragma once

// Jacobi and Legendre polynomials on [-1, 1] and their shifted versions on a
// mesh element. All functions are pure and safe to call from any thread.

#include <span>

namespace abel {

/// Exponents of the Jacobi weight (1 - x)^alpha (1 + x)^beta.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  bool valid() const noexcept { return alpha > -1.0 && beta > -1.0; }
  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

inline constexpr JacobiParams kLegendre{0.0, 0.0};

/// The closed-open element (left, right] carrying a polynomial of `degree`.
struct Element {
  double left = 0.0;
  double right = 1.0;
  int degree = 1;

  double width() const noexcept { return right - left; }
  bool valid() const noexcept { return left < right && degree >= 1; }
};

/// Slack allowed on domain membership tests, absolute.
inline constexpr double kDomainSlack = 1e-12;

/// J_k^{alpha,beta}(x) by the three-term recurrence. Throws DomainError for
/// |x| > 1 + kDomainSlack, k < 0, or invalid params.
double jacobi_eval(JacobiParams params, int k, double x);

/// Writes J_0(x) .. J_{out.size()-1}(x). No domain checks.
void jacobi_eval_all(JacobiParams params, double x, std::span<double> out) noexcept;

/// d/dx J_k^{alpha,beta}(x), from (k + alpha + beta + 1)/2 J_{k-1}^{alpha+1,beta+1}.
double jacobi_derivative(JacobiParams params, int k, double x) noexcept;

/// Writes the Legendre values P_0(x) .. P_{out.size()-1}(x). No domain checks.
inline void legendre_eval_all(double x, std::span<double> out) noexcept {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = x;
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k] = ((2.0 * kk - 1.0) * x * out[k - 1] - (kk - 1.0) * out[k - 2]) / kk;
  }
}

/// gamma_k^{alpha,beta} = integral of J_k^2 against the Jacobi weight.
double jacobi_norm_gamma(JacobiParams params, int k);

/// Affine map of t in the element onto [-1, 1].
inline double to_reference(const Element& elem, double t) noexcept {
  return (2.0 * t - elem.left - elem.right) / elem.width();
}

/// Inverse of to_reference.
inline double from_reference(const Element& elem, double x) noexcept {
  return 0.5 * (elem.width() * x + elem.left + elem.right);
}

/// J_k^{alpha,beta} evaluated at the reference image of t. With kLegendre
/// this is the shifted Legendre polynomial L_{n,k}(t).
double shifted_eval(JacobiParams params, const Element& elem, int k, double t);

}  // namespace abel
