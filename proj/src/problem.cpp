#include "abel/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abel/errors.hpp"

namespace abel {

void ProblemSpec::check() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(T > 0.0)) throw DomainError("T must be positive");
  if (!f) throw DomainError("problem '" + name + "' has no right-hand side");
  if (!term && (!kappa || !psi)) {
    throw DomainError("problem '" + name + "' needs kappa and psi, or a combined term");
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!(breaks[i] > 0.0 && breaks[i] < T)) throw DomainError("break points must lie inside (0, T)");
    if (i > 0 && !(breaks[i] > breaks[i - 1])) throw DomainError("break points must increase");
  }
}

std::vector<std::string> ProblemSpec::validate() const {
  std::vector<std::string> warnings;
  auto say = [&](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    warnings.push_back(os.str());
  };

  constexpr int kSamples = 16;
  const double f0 = f(0.0);
  if (!std::isfinite(f0) || std::abs(f0) > 1e-12) say("f(0) = ", f0, " is not zero");

  // Sample strictly inside (0, T] to stay off break points and t = 0.
  std::vector<double> ts;
  for (int i = 1; i <= kSamples; ++i) ts.push_back(T * (i - 0.5) / kSamples);

  if (kappa) {
    for (double t : ts) {
      const double k = kappa(t, t);
      if (!std::isfinite(k) || std::abs(k) < 1e-14) {
        say("kappa(t, t) vanishes at t = ", t, "; the equation is not reducible to the second kind");
        break;
      }
    }
  }

  const double us[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  double min_slope = INFINITY;
  for (double s : ts) {
    for (double u : us) {
      double slope = NAN;
      if (separable() && dpsi_du) {
        slope = dpsi_du(s, u);
      } else if (!separable() && dterm_du) {
        slope = dterm_du(s, s, u);
        if (kappa) slope /= kappa(s, s);
      } else {
        break;
      }
      if (std::isfinite(slope)) min_slope = std::min(min_slope, std::abs(slope));
    }
  }
  if (std::isfinite(min_slope) && min_slope < 1e-12) {
    say("dpsi/du is not bounded away from zero on the sampled set (min |dpsi/du| = ", min_slope, ")");
  }
  if (!has_analytic_derivative()) say("no analytic derivative; Newton uses finite differences");

  if (linear) {
    if (!separable()) {
      say("linear flag set on a non-separable integrand; the flag is ignored");
    } else {
      for (double s : ts) {
        for (double u : us) {
          if (std::abs(psi(s, u) - u) > 1e-14 * (1.0 + std::abs(u))) {
            say("linear flag set but psi(s, u) != u at s = ", s, ", u = ", u);
            return warnings;
          }
        }
      }
    }
  }
  return warnings;
}

ProblemSpec linear_problem(std::string name, double alpha, double T, ProblemSpec::Kernel kappa,
                           ProblemSpec::Rhs f) {
  ProblemSpec p;
  p.name = std::move(name);
  p.alpha = alpha;
  p.T = T;
  p.kappa = std::move(kappa);
  p.psi = [](double, double u) { return u; };
  p.dpsi_du = [](double, double) { return 1.0; };
  p.f = std::move(f);
  p.linear = true;
  return p;
}

}  // namespace abel
