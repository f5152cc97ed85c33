#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abel/discretization.hpp"
#include "abel/mesh.hpp"
#include "abel/problem.hpp"

namespace abel {

enum class LinearSolverKind { lu_partial_pivot };

struct SolverOptions {
  /// Max-norm of the element residual at which Newton stops.
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  /// Backtracking halvings tried when a full Newton step increases the residual.
  int newton_max_halvings = 20;
  int descent_steps = 50;
  double descent_step_size = 1e-2;
  LinearSolverKind linear_solver = LinearSolverKind::lu_partial_pivot;
  /// Solve linear-flagged problems with one LU per element instead of Newton.
  bool use_linear_path = true;
  Execution execution = Execution::parallel;
};

/// Throws DomainError on invalid options.
void check(const SolverOptions& options);

/// Global approximation: one Legendre expansion per mesh element.
struct PiecewiseSolution {
  Mesh mesh;
  std::vector<ElementSolution> elements;
  std::vector<std::string> warnings;
  bool finite_difference_jacobian = false;
  /// Newton iterations spent per element (0 on the linear path).
  std::vector<int> newton_iterations;

  /// u_M^N(t) for 0 <= t <= T; t = 0 gives the first element's limit.
  double operator()(double t) const;
};

double evaluate(const PiecewiseSolution& solution, double t);

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Full Newton steps with half-step backtracking when the residual grows.
/// Returns x with ||residual(x)||_inf <= newton_tol or throws NewtonDiverged /
/// SingularJacobian tagged with `element`.
Eigen::VectorXd newton(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd init,
                       const SolverOptions& options, int element = -1, int* iterations = nullptr);

/// Gradient steps on g(x) = |residual(x)|^2 / 2 from `start`, halving the step
/// whenever g would increase. Returns the iterate with the smallest g.
Eigen::VectorXd steepest_descent_init(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd start,
                                      const SolverOptions& options);

/// Marches over the elements in order, solving each local system.
PiecewiseSolution solve(const ProblemSpec& problem, const Mesh& mesh, const SolverOptions& options = {});

/// (K u)(t) = integral_0^t (t - s)^(alpha-1) G(t, s, u(s)) ds by composite
/// quadrature: Gauss-Jacobi on the panel ending at t, Gauss-Legendre on the
/// others, panels split at problem.breaks and doubled until successive
/// estimates agree to `rel_tol`. Throws NumericalError if they never do.
double forward_apply(const ProblemSpec& problem, const std::function<double(double)>& u, double t,
                     int oracle_order = 20, double rel_tol = 1e-12);

}  // namespace abel
