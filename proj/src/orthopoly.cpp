#include "abel/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abel/errors.hpp"

namespace abel {
namespace {

void check_params(JacobiParams params) {
  if (!params.valid()) {
    throw DomainError("Jacobi exponents must exceed -1 (got alpha=" + std::to_string(params.alpha) +
                      ", beta=" + std::to_string(params.beta) + ")");
  }
}

// Values of J_{k-1} and J_k at x, by the standard recurrence.
double recurrence(JacobiParams params, int k, double x, double* previous) noexcept {
  const double a = params.alpha;
  const double b = params.beta;
  double p0 = 1.0;
  if (k == 0) {
    if (previous) *previous = 0.0;
    return p0;
  }
  double p1 = 0.5 * ((a + b + 2.0) * x + (a - b));
  for (int n = 2; n <= k; ++n) {
    const double nn = n;
    const double c = 2.0 * nn + a + b;
    const double lhs = 2.0 * nn * (nn + a + b) * (c - 2.0);
    const double p2 = ((c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * p1 -
                       2.0 * (nn + a - 1.0) * (nn + b - 1.0) * c * p0) /
                      lhs;
    p0 = p1;
    p1 = p2;
  }
  if (previous) *previous = p0;
  return p1;
}

}  // namespace

double jacobi_eval(JacobiParams params, int k, double x) {
  check_params(params);
  if (k < 0) throw DomainError("Jacobi degree must be non-negative");
  if (std::abs(x) > 1.0 + kDomainSlack) {
    throw DomainError("Jacobi argument outside [-1, 1]: " + std::to_string(x));
  }
  return recurrence(params, k, x, nullptr);
}

void jacobi_eval_all(JacobiParams params, double x, std::span<double> out) noexcept {
  if (out.empty()) return;
  const double a = params.alpha;
  const double b = params.beta;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 0.5 * ((a + b + 2.0) * x + (a - b));
  for (std::size_t n = 2; n < out.size(); ++n) {
    const double nn = static_cast<double>(n);
    const double c = 2.0 * nn + a + b;
    out[n] = ((c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * out[n - 1] -
              2.0 * (nn + a - 1.0) * (nn + b - 1.0) * c * out[n - 2]) /
             (2.0 * nn * (nn + a + b) * (c - 2.0));
  }
}

double jacobi_derivative(JacobiParams params, int k, double x) noexcept {
  if (k == 0) return 0.0;
  const JacobiParams raised{params.alpha + 1.0, params.beta + 1.0};
  return 0.5 * (k + params.alpha + params.beta + 1.0) * recurrence(raised, k - 1, x, nullptr);
}

double jacobi_norm_gamma(JacobiParams params, int k) {
  check_params(params);
  if (k < 0) throw DomainError("Jacobi degree must be non-negative");
  const double a = params.alpha;
  const double b = params.beta;
  const double log2 = std::log(2.0);
  if (k == 0) {
    return std::exp((a + b + 1.0) * log2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
  }
  const double kk = k;
  const double log_value = (a + b + 1.0) * log2 - std::log(2.0 * kk + a + b + 1.0) +
                           std::lgamma(kk + a + 1.0) + std::lgamma(kk + b + 1.0) -
                           std::lgamma(kk + 1.0) - std::lgamma(kk + a + b + 1.0);
  return std::exp(log_value);
}

double shifted_eval(JacobiParams params, const Element& elem, int k, double t) {
  if (!elem.valid()) throw DomainError("invalid element");
  const double slack = kDomainSlack * std::max(1.0, std::abs(elem.right));
  if (t < elem.left - slack || t > elem.right + slack) {
    throw DomainError("point " + std::to_string(t) + " outside element [" + std::to_string(elem.left) + ", " +
                      std::to_string(elem.right) + "]");
  }
  double x = to_reference(elem, t);
  x = std::clamp(x, -1.0, 1.0);
  return jacobi_eval(params, k, x);
}

}  // namespace abel
