#include "abel/solver.hpp"

#include <cmath>
#include <limits>

#include "abel/errors.hpp"

namespace abel {
namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

// Reciprocal condition estimate below which a Jacobian counts as singular.
constexpr double kSingularRcond = 1e-15;

bool singular(const Eigen::MatrixXd& J, const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  return !J.allFinite() || !(lu.rcond() > kSingularRcond);
}

}  // namespace

void check(const SolverOptions& options) {
  if (!(options.newton_tol > 0.0)) throw DomainError("newton_tol must be positive");
  if (options.newton_max_iter < 1) throw DomainError("newton_max_iter must be >= 1");
  if (options.newton_max_halvings < 0) throw DomainError("newton_max_halvings must be >= 0");
  if (options.descent_steps < 0) throw DomainError("descent_steps must be >= 0");
  if (!(options.descent_step_size > 0.0)) throw DomainError("descent_step_size must be positive");
}

double PiecewiseSolution::operator()(double t) const {
  if (t == 0.0) return evaluate_element(mesh.element(0), elements.front().coeffs, 0.0);
  const int n = mesh.locate(t);
  return evaluate_element(mesh.element(n), elements.at(n).coeffs, t);
}

double evaluate(const PiecewiseSolution& solution, double t) { return solution(t); }

Eigen::VectorXd newton(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd x,
                       const SolverOptions& options, int element, int* iterations) {
  Eigen::VectorXd r = residual(x);
  double norm = inf_norm(r);
  int it = 0;
  for (;; ++it) {
    if (!std::isfinite(norm)) throw NewtonDiverged(element, norm);
    if (norm <= options.newton_tol) break;
    if (it == options.newton_max_iter) throw NewtonDiverged(element, norm);

    const Eigen::MatrixXd J = jacobian(x);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    if (singular(J, lu)) throw SingularJacobian(element, it);
    const Eigen::VectorXd dx = lu.solve(r);

    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= options.newton_max_halvings; ++halving, step *= 0.5) {
      Eigen::VectorXd trial = x - step * dx;
      Eigen::VectorXd r_trial = residual(trial);
      const double trial_norm = inf_norm(r_trial);
      if (std::isfinite(trial_norm) && trial_norm <= norm) {
        x = std::move(trial);
        r = std::move(r_trial);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) throw NewtonDiverged(element, norm);
  }
  if (iterations) *iterations = it;
  return x;
}

Eigen::VectorXd steepest_descent_init(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd x,
                                      const SolverOptions& options) {
  Eigen::VectorXd r = residual(x);
  double g = 0.5 * r.squaredNorm();
  if (!std::isfinite(g)) return x;
  Eigen::VectorXd best = x;
  double best_g = g;
  double step = options.descent_step_size;
  for (int k = 0; k < options.descent_steps; ++k) {
    const Eigen::VectorXd grad = jacobian(x).transpose() * r;
    if (!grad.allFinite() || grad.squaredNorm() == 0.0) break;
    bool moved = false;
    for (int tries = 0; tries < 30; ++tries, step *= 0.5) {
      Eigen::VectorXd trial = x - step * grad;
      Eigen::VectorXd r_trial = residual(trial);
      const double g_trial = 0.5 * r_trial.squaredNorm();
      if (std::isfinite(g_trial) && g_trial <= g) {
        x = std::move(trial);
        r = std::move(r_trial);
        g = g_trial;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (g < best_g) {
      best_g = g;
      best = x;
    }
  }
  return best;
}

PiecewiseSolution solve(const ProblemSpec& problem, const Mesh& mesh, const SolverOptions& options) {
  problem.check();
  check(options);
  if (mesh.T() > problem.T * (1.0 + 1e-12)) throw DomainError("mesh extends beyond the problem's T");

  PiecewiseSolution solution{mesh, {}, problem.validate(), !problem.has_analytic_derivative(), {}};
  solution.elements.reserve(mesh.size());
  solution.newton_iterations.reserve(mesh.size());
  const bool linear_path = options.use_linear_path && problem.linear && problem.separable();

  for (int n = 0; n < mesh.size(); ++n) {
    const ElementAssembler assembler(problem, mesh, n);
    const Eigen::VectorXd history = assembler.history_coeffs(solution.elements, options.execution);
    const Eigen::VectorXd rhs = assembler.rhs_coeffs();
    const int dim = assembler.dim();

    Eigen::VectorXd coeffs;
    int iterations = 0;
    if (linear_path) {
      const Eigen::MatrixXd A = assembler.linear_matrix();
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
      if (singular(A, lu)) throw SingularJacobian(n, 0);
      coeffs = lu.solve(rhs - history);
    } else {
      const ResidualFn residual = [&](const Eigen::VectorXd& u) {
        return Eigen::VectorXd(assembler.local_operator(u) - rhs + history);
      };
      const JacobianFn jacobian = [&](const Eigen::VectorXd& u) { return assembler.local_jacobian(u); };

      Eigen::VectorXd start = Eigen::VectorXd::Zero(dim);
      if (n == 0) {
        start[0] = problem.initial_guess;
      } else {
        const Eigen::VectorXd& previous = solution.elements.back().coeffs;
        const Eigen::Index keep = std::min<Eigen::Index>(dim, previous.size());
        start.head(keep) = previous.head(keep);
      }
      const Eigen::VectorXd init = steepest_descent_init(residual, jacobian, std::move(start), options);
      coeffs = newton(residual, jacobian, init, options, n, &iterations);
    }
    solution.newton_iterations.push_back(iterations);
    solution.elements.push_back(make_element_solution(problem, mesh, n, std::move(coeffs)));
  }
  return solution;
}

}  // namespace abel
