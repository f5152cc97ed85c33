#include "abel/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "abel/errors.hpp"

namespace abel {
namespace {

constexpr int kMaxNewtonIterations = 100;

// Roots of J_n by Newton's method with deflation against the roots already
// found, started from Chebyshev points. Returns false if the roots are not
// n distinct points of (-1, 1).
bool jacobi_roots_newton(JacobiParams params, int n, std::vector<double>& roots) {
  roots.clear();
  for (int k = 0; k < n; ++k) {
    double x = -std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
    bool converged = false;
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
      const double p = jacobi_eval(params, n, std::clamp(x, -1.0, 1.0));
      const double dp = jacobi_derivative(params, n, std::clamp(x, -1.0, 1.0));
      double deflation = 0.0;
      for (double r : roots) deflation += 1.0 / (x - r);
      const double denom = dp - p * deflation;
      if (denom == 0.0 || !std::isfinite(denom)) break;
      const double dx = p / denom;
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
        converged = true;
        break;
      }
    }
    if (!converged || !(x > -1.0 && x < 1.0)) return false;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  for (int k = 1; k < n; ++k) {
    if (!(roots[k] > roots[k - 1])) return false;
  }
  return true;
}

// Fallback: bracket sign changes on a grid uniform in theta = acos(x), where
// the roots of Jacobi polynomials are roughly equispaced, then bisect.
bool jacobi_roots_bisection(JacobiParams params, int n, std::vector<double>& roots) {
  roots.clear();
  const int samples = 64 * n + 64;
  auto value = [&](double x) { return jacobi_eval(params, n, x); };
  double x_prev = -1.0;
  double f_prev = value(x_prev);
  for (int i = 1; i <= samples; ++i) {
    const double x = -std::cos(std::numbers::pi * i / samples);
    const double f = value(x);
    if (f_prev == 0.0) {
      if (x_prev > -1.0) roots.push_back(x_prev);
    } else if (f_prev * f < 0.0) {
      double lo = x_prev;
      double hi = x;
      double flo = f_prev;
      for (int it = 0; it < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon(); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = value(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    f_prev = f;
  }
  return static_cast<int>(roots.size()) == n;
}

std::vector<double> jacobi_roots(JacobiParams params, int n) {
  std::vector<double> roots;
  if (jacobi_roots_newton(params, n, roots)) return roots;
  if (jacobi_roots_bisection(params, n, roots)) return roots;
  throw NumericalError("failed to locate the " + std::to_string(n) + " roots of J_n^{" +
                       std::to_string(params.alpha) + "," + std::to_string(params.beta) + "}");
}

void gauss_jacobi_weights(JacobiParams params, QuadRule& rule) {
  const int n = static_cast<int>(rule.nodes.size());
  std::vector<double> inv_gamma(n);
  for (int k = 0; k < n; ++k) inv_gamma[k] = 1.0 / jacobi_norm_gamma(params, k);
  std::vector<double> values(n);
  rule.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    jacobi_eval_all(params, rule.nodes[j], values);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += values[k] * values[k] * inv_gamma[k];
    rule.weights[j] = 1.0 / sum;
  }
}

using RuleKey = std::tuple<int, double, double, int>;

struct RuleCache {
  std::shared_mutex mutex;
  std::map<RuleKey, std::unique_ptr<QuadRule>> rules;
};

RuleCache& rule_cache() {
  static RuleCache cache;
  return cache;
}

struct LagrangeCache {
  std::shared_mutex mutex;
  std::map<int, std::unique_ptr<std::vector<double>>> tables;
};

LagrangeCache& lagrange_cache() {
  static LagrangeCache cache;
  return cache;
}

// Moments of (z - x)^(alpha-1) P_p(x) on a single panel [a, b] of [-1, 1],
// accumulated into out. dist = z - b > 0 is passed separately so that z - x
// never suffers cancellation.
void accumulate_panel(double a, double b, double dist, double alpha, std::span<double> out,
                      std::span<double> legendre) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double zprime = 1.0 + dist / half;
  const double rho = zprime + std::sqrt(zprime * zprime - 1.0);
  const int extra = std::max(1, static_cast<int>(std::ceil(8.5 / std::log10(rho))));
  const int points = std::min(64, static_cast<int>(out.size() + 1) / 2 + extra);
  const QuadRule& rule = legendre_rule(points - 1);
  for (std::size_t r = 0; r < rule.size(); ++r) {
    const double xi = rule.nodes[r];
    const double x = mid + half * xi;
    const double distance = dist + half * (1.0 - xi);
    const double weight = half * rule.weights[r] * std::pow(distance, alpha - 1.0);
    legendre_eval_all(x, legendre);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += weight * legendre[p];
  }
}

// Exact integral of (t - s)^(alpha-1) over the element, written to avoid
// cancellation when t is far to the right.
double zeroth_moment(const Element& elem, double t, double alpha) {
  const double gap = std::max(t - elem.right, 0.0);
  if (gap == 0.0) return std::pow(t - elem.left, alpha) / alpha;
  return std::pow(gap, alpha) * std::expm1(alpha * std::log1p(elem.width() / gap)) / alpha;
}

}  // namespace

QuadRule gauss_rule(QuadKind kind, JacobiParams params, int order) {
  if (order < 0 || order > 200) throw DomainError("quadrature order out of range: " + std::to_string(order));
  QuadRule rule;
  rule.kind = kind;
  rule.order = order;
  const int n = order + 1;
  switch (kind) {
    case QuadKind::gauss_legendre:
      params = kLegendre;
      [[fallthrough]];
    case QuadKind::gauss_jacobi: {
      if (!params.valid()) throw DomainError("Jacobi exponents must exceed -1");
      rule.params = params;
      rule.nodes = jacobi_roots(params, n);
      gauss_jacobi_weights(params, rule);
      break;
    }
    case QuadKind::gauss_lobatto: {
      if (!(params == kLegendre)) throw DomainError("Lobatto rules are Legendre-only");
      if (order < 1) throw DomainError("Lobatto rule needs order >= 1");
      rule.params = kLegendre;
      rule.nodes.reserve(n);
      rule.nodes.push_back(-1.0);
      if (order > 1) {
        // Interior nodes are the roots of P'_order, proportional to J^{1,1}_{order-1}.
        const auto interior = jacobi_roots(JacobiParams{1.0, 1.0}, order - 1);
        rule.nodes.insert(rule.nodes.end(), interior.begin(), interior.end());
      }
      rule.nodes.push_back(1.0);
      rule.weights.resize(n);
      const double scale = 2.0 / (static_cast<double>(order) * (order + 1));
      for (int j = 0; j < n; ++j) {
        const double p = jacobi_eval(kLegendre, order, rule.nodes[j]);
        rule.weights[j] = scale / (p * p);
      }
      break;
    }
  }
  return rule;
}

const QuadRule& cached_rule(QuadKind kind, JacobiParams params, int order) {
  if (kind != QuadKind::gauss_jacobi) params = kLegendre;
  const RuleKey key{static_cast<int>(kind), params.alpha, params.beta, order};
  RuleCache& cache = rule_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.rules.find(key); it != cache.rules.end()) return *it->second;
  }
  auto rule = std::make_unique<QuadRule>(gauss_rule(kind, params, order));
  std::unique_lock lock(cache.mutex);
  auto [it, inserted] = cache.rules.try_emplace(key, std::move(rule));
  return *it->second;
}

std::vector<double> shift_nodes(const QuadRule& rule, const Element& elem) {
  std::vector<double> out(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) out[j] = from_reference(elem, rule.nodes[j]);
  return out;
}

std::vector<double> singular_nodes(const Element& elem, double t, double alpha) {
  const QuadRule& rule = singular_rule(alpha, elem.degree);
  const double span = t - elem.left;
  std::vector<double> tau(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) tau[j] = elem.left + 0.5 * (1.0 + rule.nodes[j]) * span;
  return tau;
}

double singular_element_integral(std::span<const double> g_at_nodes, const Element& elem, double t,
                                 double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(t > elem.left)) throw DomainError("singular element integral needs t > element left end");
  if (t > elem.right + kDomainSlack * std::max(1.0, std::abs(elem.right))) {
    throw DomainError("singular element integral needs t inside the element");
  }
  const QuadRule& rule = singular_rule(alpha, elem.degree);
  if (g_at_nodes.size() != rule.size()) throw DomainError("sample count must equal element degree + 1");
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) sum += g_at_nodes[j] * rule.weights[j];
  return std::pow(0.5 * (t - elem.left), alpha) * sum;
}

void modified_moments_into(const Element& elem, double t, double alpha, std::span<double> out,
                           std::span<double> scratch) {
  if (!elem.valid()) throw DomainError("invalid element");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  const double h = elem.width();
  if (t < elem.right - kDomainSlack * std::max(1.0, std::abs(elem.right))) {
    throw DomainError("history point must not precede the element's right end");
  }
  std::fill(out.begin(), out.end(), 0.0);
  if (out.empty()) return;
  const double scale = std::pow(0.5 * h, alpha);
  if (alpha == 1.0) {
    out[0] = h;
    return;
  }
  // Reference-coordinate distance from the singularity z to the right end x = 1.
  const double d = std::max(2.0 * (t - elem.right) / h, 0.0);
  std::span<double> legendre = scratch.first(out.size());
  if (d == 0.0) {
    const QuadRule& rule = singular_rule(alpha, static_cast<int>(out.size() - 1) / 2);
    for (std::size_t r = 0; r < rule.size(); ++r) {
      legendre_eval_all(rule.nodes[r], legendre);
      for (std::size_t p = 0; p < out.size(); ++p) out[p] += rule.weights[r] * legendre[p];
    }
  } else if (d >= 2.0) {
    accumulate_panel(-1.0, 1.0, d, alpha, out, legendre);
  } else {
    // Panels halve toward x = 1 until each is no longer than its distance to z.
    double left = -1.0;
    double gap = 2.0;
    while (gap > d) {
      gap *= 0.5;
      const double right = 1.0 - gap;
      accumulate_panel(left, right, d + gap, alpha, out, legendre);
      left = right;
    }
    accumulate_panel(left, 1.0, d, alpha, out, legendre);
  }
  for (double& m : out) m *= scale;

  const double exact0 = zeroth_moment(elem, t, alpha);
  if (!(std::abs(out[0] - exact0) <= 1e-6 * std::abs(exact0))) {
    throw NumericalError("modified moments lost accuracy (mu_0=" + std::to_string(out[0]) +
                         ", exact=" + std::to_string(exact0) + ")");
  }
}

std::vector<double> modified_moments(const Element& elem, double t, double alpha, int max_degree) {
  if (max_degree < 0) throw DomainError("max_degree must be non-negative");
  std::vector<double> out(max_degree + 1);
  std::vector<double> scratch(max_degree + 1);
  modified_moments_into(elem, t, alpha, out, scratch);
  return out;
}

const std::vector<double>& lobatto_to_legendre(int order) {
  LagrangeCache& cache = lagrange_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.tables.find(order); it != cache.tables.end()) return *it->second;
  }
  const QuadRule& rule = lobatto_rule(order);
  const int n = order + 1;
  auto table = std::make_unique<std::vector<double>>(static_cast<std::size_t>(n) * n);
  std::vector<double> legendre(n);
  for (int j = 0; j < n; ++j) {
    legendre_eval_all(rule.nodes[j], legendre);
    for (int p = 0; p < n; ++p) {
      // The discrete Lobatto norm of P_order is 2/order rather than 2/(2 order + 1).
      const double inv_norm = p < order ? 0.5 * (2.0 * p + 1.0) : 0.5 * order;
      (*table)[static_cast<std::size_t>(j) * n + p] = inv_norm * rule.weights[j] * legendre[p];
    }
  }
  std::unique_lock lock(cache.mutex);
  auto [it, inserted] = cache.tables.try_emplace(order, std::move(table));
  return *it->second;
}

void history_weights_into(const Element& elem, double t, double alpha, std::span<double> out,
                          std::span<double> scratch) {
  const int n = elem.degree + 1;
  std::span<double> moments = scratch.first(n);
  modified_moments_into(elem, t, alpha, moments, scratch.subspan(n, n));
  const std::vector<double>& table = lobatto_to_legendre(elem.degree);
  for (int j = 0; j < n; ++j) {
    const double* row = table.data() + static_cast<std::size_t>(j) * n;
    double sum = 0.0;
    for (int p = 0; p < n; ++p) sum += row[p] * moments[p];
    out[j] = sum;
  }
}

HistoryWeights history_weights(const Element& elem, double t, double alpha) {
  HistoryWeights result{elem, t, std::vector<double>(elem.degree + 1)};
  std::vector<double> scratch(2 * (elem.degree + 1));
  history_weights_into(elem, t, alpha, result.values, scratch);
  double sum = 0.0;
  for (double w : result.values) sum += w;
  const double exact = zeroth_moment(elem, t, alpha);
  if (!(std::abs(sum - exact) <= 1e-6 * std::abs(exact))) {
    throw NumericalError("history weights fail the constant-sum check");
  }
  return result;
}

}  // namespace abel
