#include "abel/discretization.hpp"

#include <algorithm>
#include <cmath>

#include "abel/errors.hpp"

namespace abel {

double evaluate_element(const Element& elem, const Eigen::VectorXd& coeffs, double t) {
  const double x = std::clamp(to_reference(elem, t), -1.0, 1.0);
  // Forward recurrence, summing as we go.
  double p0 = 1.0;
  double sum = coeffs.size() > 0 ? coeffs[0] : 0.0;
  if (coeffs.size() < 2) return sum;
  double p1 = x;
  sum += coeffs[1] * p1;
  for (Eigen::Index k = 2; k < coeffs.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    sum += coeffs[k] * p2;
    p0 = p1;
    p1 = p2;
  }
  return sum;
}

ElementSolution make_element_solution(const ProblemSpec& problem, const Mesh& mesh, int n, Eigen::VectorXd coeffs) {
  const Element elem = mesh.element(n);
  if (coeffs.size() != elem.degree + 1) throw DomainError("coefficient count must equal element degree + 1");
  ElementSolution sol;
  sol.n = n;
  sol.lobatto_nodes = shift_nodes(lobatto_rule(elem.degree), elem);
  sol.lobatto_u.resize(sol.lobatto_nodes.size());
  for (std::size_t j = 0; j < sol.lobatto_nodes.size(); ++j) {
    sol.lobatto_u[j] = evaluate_element(elem, coeffs, sol.lobatto_nodes[j]);
  }
  if (problem.separable()) {
    sol.lobatto_psi.resize(sol.lobatto_nodes.size());
    for (std::size_t j = 0; j < sol.lobatto_nodes.size(); ++j) {
      sol.lobatto_psi[j] = problem.psi(sol.lobatto_nodes[j], sol.lobatto_u[j]);
    }
  }
  sol.coeffs = std::move(coeffs);
  return sol;
}

ElementAssembler::ElementAssembler(const ProblemSpec& problem, const Mesh& mesh, int n)
    : problem_(problem), mesh_(mesh), n_(n), elem_(mesh.element(n)) {
  const int dim = elem_.degree + 1;
  const double h = elem_.width();
  const double alpha = problem.alpha;

  const QuadRule& gauss = legendre_rule(elem_.degree);
  const QuadRule& jacobi = singular_rule(alpha, elem_.degree);

  t_.resize(dim);
  gauss_weights_ = gauss.weights;
  prefactor_.resize(dim);
  legendre_at_t_.resize(dim, dim);
  std::vector<double> values(dim);
  for (int i = 0; i < dim; ++i) {
    // t_i - t_n taken from the reference node, not by subtracting breakpoints.
    const double offset = 0.5 * h * (1.0 + gauss.nodes[i]);
    t_[i] = elem_.left + offset;
    prefactor_[i] = std::pow(offset, alpha) * gauss.weights[i];
    legendre_eval_all(gauss.nodes[i], values);
    for (int p = 0; p < dim; ++p) legendre_at_t_(i, p) = values[p];
  }

  jacobi_weights_ = jacobi.weights;
  sigma_.resize(static_cast<std::size_t>(dim) * dim);
  basis_at_sigma_.resize(dim * dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double offset = 0.5 * h * (1.0 + gauss.nodes[i]);
    for (int j = 0; j < dim; ++j) {
      const double frac = 0.5 * (1.0 + jacobi.nodes[j]);
      sigma_[i * dim + j] = elem_.left + frac * offset;
      const double xi = -1.0 + frac * (1.0 + gauss.nodes[i]);
      legendre_eval_all(xi, values);
      for (int q = 0; q < dim; ++q) basis_at_sigma_(i * dim + j, q) = values[q];
    }
  }
}

Eigen::VectorXd ElementAssembler::project(std::span<const double> values_at_points) const {
  const int dim = this->dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    const double wv = gauss_weights_[i] * values_at_points[i];
    for (int p = 0; p < dim; ++p) out[p] += wv * legendre_at_t_(i, p);
  }
  for (int p = 0; p < dim; ++p) out[p] *= 0.5 * (2.0 * p + 1.0);
  return out;
}

Eigen::VectorXd ElementAssembler::rhs_coeffs() const {
  std::vector<double> values(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) values[i] = problem_.f(t_[i]);
  return project(values);
}

Eigen::VectorXd ElementAssembler::history_coeffs(std::span<const ElementSolution> prior, Execution exec) const {
  for (const ElementSolution& e : prior) {
    if (e.n >= n_) throw DomainError("history may only contain elements before the current one");
  }
  std::vector<double> values(t_.size(), 0.0);
  history_values(problem_, mesh_, prior, t_, values, exec);
  return project(values);
}

Eigen::VectorXd ElementAssembler::local_operator(const Eigen::VectorXd& u_hat) const {
  const int dim = this->dim();
  if (u_hat.size() != dim) throw DomainError("coefficient vector has the wrong length");
  const Eigen::VectorXd u_at_sigma = basis_at_sigma_ * u_hat;
  Eigen::VectorXd inner(dim);
  for (int i = 0; i < dim; ++i) {
    double sum = 0.0;
    for (int j = 0; j < dim; ++j) {
      const int ij = i * dim + j;
      sum += jacobi_weights_[j] * problem_.integrand(t_[i], sigma_[ij], u_at_sigma[ij]);
    }
    inner[i] = prefactor_[i] * sum;
  }
  const double scale = std::pow(2.0, -(1.0 + problem_.alpha));
  Eigen::VectorXd out = legendre_at_t_.transpose() * inner;
  for (int p = 0; p < dim; ++p) out[p] *= (2.0 * p + 1.0) * scale;
  return out;
}

Eigen::VectorXd ElementAssembler::finite_difference_jacobian_column(const Eigen::VectorXd& u_hat, int q) const {
  const double step = 1e-7 * (1.0 + std::abs(u_hat[q]));
  Eigen::VectorXd plus = u_hat;
  Eigen::VectorXd minus = u_hat;
  plus[q] += step;
  minus[q] -= step;
  return (local_operator(plus) - local_operator(minus)) / (2.0 * step);
}

Eigen::MatrixXd ElementAssembler::local_jacobian(const Eigen::VectorXd& u_hat) const {
  const int dim = this->dim();
  if (u_hat.size() != dim) throw DomainError("coefficient vector has the wrong length");
  Eigen::MatrixXd jac(dim, dim);
  if (!problem_.has_analytic_derivative()) {
    for (int q = 0; q < dim; ++q) jac.col(q) = finite_difference_jacobian_column(u_hat, q);
    return jac;
  }
  const Eigen::VectorXd u_at_sigma = basis_at_sigma_ * u_hat;
  // inner(i, q) = prefactor_i sum_j v_j dG/du(t_i, sigma_ij, u_ij) L_q(sigma_ij)
  Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const int ij = i * dim + j;
      const double d = jacobi_weights_[j] * problem_.dintegrand_du(t_[i], sigma_[ij], u_at_sigma[ij]);
      inner.row(i) += d * basis_at_sigma_.row(ij);
    }
    inner.row(i) *= prefactor_[i];
  }
  jac = legendre_at_t_.transpose() * inner;
  const double scale = std::pow(2.0, -(1.0 + problem_.alpha));
  for (int p = 0; p < dim; ++p) jac.row(p) *= (2.0 * p + 1.0) * scale;
  return jac;
}

Eigen::MatrixXd ElementAssembler::linear_matrix() const {
  if (!problem_.linear || !problem_.separable()) throw DomainError("linear assembly needs a linear separable problem");
  const int dim = this->dim();
  Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const int ij = i * dim + j;
      inner.row(i) += jacobi_weights_[j] * problem_.kappa(t_[i], sigma_[ij]) * basis_at_sigma_.row(ij);
    }
    inner.row(i) *= prefactor_[i];
  }
  Eigen::MatrixXd A = legendre_at_t_.transpose() * inner;
  const double scale = std::pow(2.0, -(1.0 + problem_.alpha));
  for (int p = 0; p < dim; ++p) A.row(p) *= (2.0 * p + 1.0) * scale;
  return A;
}

Eigen::VectorXd rhs_coeffs(const ProblemSpec& problem, const Mesh& mesh, int n) {
  return ElementAssembler(problem, mesh, n).rhs_coeffs();
}

Eigen::VectorXd history_coeffs(const ProblemSpec& problem, const Mesh& mesh, int n,
                               std::span<const ElementSolution> prior, Execution exec) {
  return ElementAssembler(problem, mesh, n).history_coeffs(prior, exec);
}

Eigen::VectorXd local_residual(const ProblemSpec& problem, const Mesh& mesh, int n, const Eigen::VectorXd& history,
                               const Eigen::VectorXd& u_hat) {
  const ElementAssembler assembler(problem, mesh, n);
  return assembler.local_operator(u_hat) - assembler.rhs_coeffs() + history;
}

Eigen::MatrixXd local_jacobian(const ProblemSpec& problem, const Mesh& mesh, int n, const Eigen::VectorXd& u_hat) {
  return ElementAssembler(problem, mesh, n).local_jacobian(u_hat);
}

LinearSystem assemble_linear(const ProblemSpec& problem, const Mesh& mesh, int n,
                             std::span<const ElementSolution> prior, Execution exec) {
  if (!problem.linear) throw DomainError("assemble_linear needs the linear flag");
  const ElementAssembler assembler(problem, mesh, n);
  LinearSystem sys;
  sys.A = assembler.linear_matrix();
  sys.c = assembler.rhs_coeffs();
  sys.b = prior.empty() ? Eigen::VectorXd::Zero(assembler.dim()) : history_coeffs(problem, mesh, n, prior, exec);
  return sys;
}

}  // namespace abel
