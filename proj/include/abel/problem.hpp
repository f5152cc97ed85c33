#pragma once

#include <functional>
#include <string>
#include <vector>

namespace abel {

/// One instance of
///
///   integral_0^t (t - s)^(alpha-1) kappa(t, s) psi(s, u(s)) ds = f(t),  0 < t <= T.
///
/// The integrand may instead be given as a single term G(t, s, u) when it
/// does not factor into kappa * psi (for example (1 + s + t u) u). Every
/// callable must be pure: the solver calls them from several threads.
struct ProblemSpec {
  using Kernel = std::function<double(double t, double s)>;
  using Nonlinearity = std::function<double(double s, double u)>;
  using Term = std::function<double(double t, double s, double u)>;
  using Rhs = std::function<double(double t)>;

  std::string name;
  double alpha = 0.5;
  double T = 1.0;

  Kernel kappa;
  Nonlinearity psi;
  Nonlinearity dpsi_du;

  /// Non-separable integrand; when set it takes precedence over kappa * psi.
  Term term;
  Term dterm_du;

  Rhs f;

  /// psi(s, u) = u; enables the single linear solve per element.
  bool linear = false;

  /// Points in (0, T) where kappa, psi or the solution may be discontinuous.
  std::vector<double> breaks;

  /// Constant used as the first element's starting guess (problems whose psi
  /// is undefined at u = 0 need a nonzero one).
  double initial_guess = 0.0;

  bool separable() const noexcept { return !term; }
  bool has_analytic_derivative() const noexcept { return separable() ? bool(dpsi_du) : bool(dterm_du); }

  double integrand(double t, double s, double u) const { return term ? term(t, s, u) : kappa(t, s) * psi(s, u); }
  /// d/du of integrand; callers must check has_analytic_derivative first.
  double dintegrand_du(double t, double s, double u) const {
    return term ? dterm_du(t, s, u) : kappa(t, s) * dpsi_du(s, u);
  }

  /// Throws DomainError if the instance cannot be solved at all (alpha
  /// outside (0, 1], T <= 0, missing callables, bad breaks).
  void check() const;

  /// Sampled checks of the well-posedness hypotheses: f(0) = 0,
  /// kappa(t, t) != 0, |dpsi/du| bounded away from zero, and the linear flag
  /// agreeing with psi. Violations are reported, never thrown.
  std::vector<std::string> validate() const;
};

/// kappa * psi with psi(s, u) = u and the linear flag set.
ProblemSpec linear_problem(std::string name, double alpha, double T, ProblemSpec::Kernel kappa,
                           ProblemSpec::Rhs f);

}  // namespace abel
