#include "abel/benchmarks.hpp"

#include <cmath>
#include <memory>
#include <mutex>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "abel/errors.hpp"
#include "abel/solver.hpp"

namespace abel {
namespace {

// Accuracy of the manufactured right-hand sides.
constexpr double kManufacturedTol = 1e-12;

ProblemSpec with_manufactured_rhs(ProblemSpec spec, ExactFn exact) {
  // f is built from a copy without f, so the closure does not refer to itself.
  auto base = std::make_shared<const ProblemSpec>(spec);
  spec.f = [base, exact = std::move(exact)](double t) {
    return forward_apply(*base, exact, t, 20, kManufacturedTol);
  };
  return spec;
}

BenchmarkProblem ex1(const BenchmarkOptions& options) {
  if (!options.alpha) throw DomainError("ex1_singular needs alpha");
  const double a = *options.alpha;
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("ex1_singular needs alpha in (0, 1]");
  ProblemSpec spec;
  spec.name = "ex1_singular";
  spec.alpha = a;
  spec.T = 1.0;
  spec.kappa = [](double t, double s) { return std::exp(t * s); };
  spec.psi = [](double, double u) { return u * u; };
  spec.dpsi_du = [](double, double u) { return 2.0 * u; };
  // psi = u^2 has two branches; start on the positive one.
  spec.initial_guess = 1.0;
  ExactFn exact = [a](double t) { return std::pow(t, 1.0 + a); };
  if (options.closed_form_rhs) {
    const double c = boost::math::tgamma(3.0 + 2.0 * a) * boost::math::tgamma(a) / boost::math::tgamma(3.0 + 3.0 * a);
    spec.f = [a, c](double t) {
      if (t == 0.0) return 0.0;
      return c * std::pow(t, 2.0 + 3.0 * a) * boost::math::hypergeometric_1F1(3.0 + 2.0 * a, 3.0 + 3.0 * a, t * t);
    };
  } else {
    spec = with_manufactured_rhs(std::move(spec), exact);
  }
  return {BenchmarkId::ex1_singular, std::move(spec), exact, true,
          "kappa = exp(ts), psi = u^2, u = t^(1+alpha) on [0,1]"};
}

BenchmarkProblem ex2() {
  const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
  ProblemSpec spec = linear_problem(
      "ex2_plato", 0.5, 1.0, [inv_sqrt_pi](double t, double s) { return inv_sqrt_pi * std::exp(s - t); },
      [](double t) { return std::exp(-t) * (std::pow(t, 4) + std::pow(t, 6)); });
  const double c4 = 24.0 / boost::math::tgamma(4.5);
  const double c6 = 720.0 / boost::math::tgamma(6.5);
  ExactFn exact = [c4, c6](double t) { return std::exp(-t) * (c4 * std::pow(t, 3.5) + c6 * std::pow(t, 5.5)); };
  return {BenchmarkId::ex2_plato, std::move(spec), exact, false,
          "linear, kappa = exp(s-t)/sqrt(pi), alpha = 0.5, u = exp(-t)(24 t^3.5/G(4.5) + 720 t^5.5/G(6.5))"};
}

BenchmarkProblem ex3() {
  ProblemSpec spec;
  spec.name = "ex3_branca";
  spec.alpha = 0.5;
  spec.T = 1.0;
  spec.term = [](double t, double s, double u) { return (1.0 + s + t * u) * u; };
  spec.dterm_du = [](double t, double s, double u) { return 1.0 + s + 2.0 * t * u; };
  spec.f = [](double t) {
    return 32.0 / 45045.0 * (1287.0 + 1144.0 * t + 960.0 * std::pow(t, 4)) * std::pow(t, 3.5);
  };
  return {BenchmarkId::ex3_branca, std::move(spec), ExactFn([](double t) { return t * t * t; }), false,
          "G = (1 + s + t u) u, alpha = 0.5, u = t^3"};
}

BenchmarkProblem ex4() {
  ProblemSpec spec = linear_problem(
      "ex4_liu", 0.75, 1.0, [](double t, double s) { return t * t * s * s * s + std::pow(s, 4) + 1.0; },
      [](double t) {
        return 128.0 * std::pow(t, 2.75) * (3933.0 + 256.0 * std::pow(t, 4) * (8.0 + 9.0 * t)) / 908523.0;
      });
  return {BenchmarkId::ex4_liu, std::move(spec), ExactFn([](double t) { return t * t; }), false,
          "linear, kappa = t^2 s^3 + s^4 + 1, alpha = 0.75, u = t^2"};
}

BenchmarkProblem ex5() {
  ProblemSpec spec;
  spec.name = "ex5_discontinuous";
  spec.alpha = 0.8;
  spec.T = 1.0;
  spec.kappa = [](double t, double s) { return std::sin(t - s); };
  spec.psi = [](double, double u) { return std::pow(u, 5); };
  spec.dpsi_du = [](double, double u) { return 5.0 * std::pow(u, 4); };
  spec.breaks = {0.5};
  spec.initial_guess = 1.0;
  // Left-continuous at the jump, like the elements (t_n, t_{n+1}].
  ExactFn exact = [](double t) { return t <= 0.5 ? std::exp(-t) : 2.0 - t * t; };
  spec = with_manufactured_rhs(std::move(spec), exact);
  return {BenchmarkId::ex5_discontinuous, std::move(spec), exact, false,
          "kappa = sin(t-s), psi = u^5, alpha = 0.8, u jumps at 0.5"};
}

double ex6_kappa(double t, double s) {
  if (s <= 0.5) return t * t - s + 5.0;
  if (s <= 1.0) return std::exp(s * t) + 4.0 / (s + 1.0) - 2.0;
  return t / s;
}

BenchmarkProblem ex6() {
  ProblemSpec spec;
  spec.name = "ex6_unknown";
  spec.alpha = 0.6;
  spec.T = 1.5;
  spec.kappa = ex6_kappa;
  spec.psi = [](double s, double u) { return std::cos(2.0 * s * u) - 3.0 * std::log(u) - std::sqrt(s * u); };
  spec.dpsi_du = [](double s, double u) {
    const double root = s > 0.0 ? 0.5 * std::sqrt(s / u) : 0.0;
    return -2.0 * s * std::sin(2.0 * s * u) - 3.0 / u - root;
  };
  spec.f = [](double t) { return std::pow(t, 1.5) - std::abs(t); };
  spec.breaks = {0.5, 1.0};
  // psi(0, u) = 1 - 3 ln u vanishes here, which is where u starts.
  spec.initial_guess = std::exp(1.0 / 3.0);
  return {BenchmarkId::ex6_unknown, std::move(spec), std::nullopt, false,
          "piecewise kappa, psi = cos(2su) - ln u^3 - sqrt(su), alpha = 0.6, T = 1.5, no exact solution"};
}

}  // namespace

BenchmarkProblem make_benchmark(BenchmarkId id, const BenchmarkOptions& options) {
  switch (id) {
    case BenchmarkId::ex1_singular:
      return ex1(options);
    case BenchmarkId::ex2_plato:
      return ex2();
    case BenchmarkId::ex3_branca:
      return ex3();
    case BenchmarkId::ex4_liu:
      return ex4();
    case BenchmarkId::ex5_discontinuous:
      return ex5();
    case BenchmarkId::ex6_unknown:
      return ex6();
  }
  throw DomainError("unknown benchmark id");
}

BenchmarkProblem make_benchmark(const std::string& name, const BenchmarkOptions& options) {
  return make_benchmark(parse_benchmark(name), options);
}

std::vector<BenchmarkId> all_benchmarks() {
  return {BenchmarkId::ex1_singular, BenchmarkId::ex2_plato,         BenchmarkId::ex3_branca,
          BenchmarkId::ex4_liu,      BenchmarkId::ex5_discontinuous, BenchmarkId::ex6_unknown};
}

std::string to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::ex1_singular:
      return "ex1_singular";
    case BenchmarkId::ex2_plato:
      return "ex2_plato";
    case BenchmarkId::ex3_branca:
      return "ex3_branca";
    case BenchmarkId::ex4_liu:
      return "ex4_liu";
    case BenchmarkId::ex5_discontinuous:
      return "ex5_discontinuous";
    case BenchmarkId::ex6_unknown:
      return "ex6_unknown";
  }
  return "?";
}

BenchmarkId parse_benchmark(const std::string& name) {
  for (BenchmarkId id : all_benchmarks()) {
    const std::string full = to_string(id);
    // "ex3" works as well as "ex3_branca"
    if (name == full || name == full.substr(0, 3)) return id;
  }
  throw DomainError("unknown benchmark '" + name + "'");
}

ExactFn reference_solution(const BenchmarkProblem& problem) {
  if (problem.exact) return *problem.exact;
  if (problem.id != BenchmarkId::ex6_unknown) throw DomainError("benchmark has no reference solution");
  static std::once_flag once;
  static std::shared_ptr<const PiecewiseSolution> stored;
  std::call_once(once, [] {
    const BenchmarkProblem b = make_benchmark(BenchmarkId::ex6_unknown);
    const Mesh mesh({0.0, 0.5, 1.0, 1.5}, {12, 12, 12});
    stored = std::make_shared<const PiecewiseSolution>(solve(b.spec, mesh));
  });
  return [solution = stored](double t) { return (*solution)(t); };
}

ProblemSpec perturb_rhs(const ProblemSpec& problem, double delta) {
  if (!(delta >= 0.0)) throw DomainError("perturbation must be >= 0");
  ProblemSpec out = problem;
  if (delta == 0.0) return out;
  out.f = [f = problem.f, delta](double t) { return f(t) + delta; };
  return out;
}

}  // namespace abel
