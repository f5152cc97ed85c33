#pragma once

// Element-level collocation system. For element n with degree M the unknowns
// are the shifted-Legendre coefficients u_hat_0..u_hat_M of u on that
// element, and the M + 1 equations compare Legendre coefficients of
//
//   local(t) = integral_{t_n}^t (t - s)^(alpha-1) G(t, s, u(s)) ds
//
// with those of f(t) - history(t), history being the same integral over the
// elements already solved. Both sides are interpolated at the element's
// Gauss-Legendre points.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "abel/mesh.hpp"
#include "abel/problem.hpp"
#include "abel/quadrature.hpp"

namespace abel {

enum class Execution { serial, parallel };

/// Solved element: its coefficients plus the values the history assembly of
/// later elements reads at the element's Lobatto nodes.
struct ElementSolution {
  int n = 0;
  Eigen::VectorXd coeffs;
  std::vector<double> lobatto_nodes;
  std::vector<double> lobatto_u;
  /// psi(s_j, u(s_j)); filled for separable problems only.
  std::vector<double> lobatto_psi;
};

ElementSolution make_element_solution(const ProblemSpec& problem, const Mesh& mesh, int n, Eigen::VectorXd coeffs);

/// Sum_p coeffs[p] L_{elem,p}(t) for t in the element.
double evaluate_element(const Element& elem, const Eigen::VectorXd& coeffs, double t);

/// Precomputed quadrature data for one element: the collocation (Gauss-
/// Legendre) points t_i, the mapped Gauss-Jacobi points sigma_ij and the
/// Legendre basis at both. Holds references to the problem and mesh.
class ElementAssembler {
 public:
  ElementAssembler(const ProblemSpec& problem, const Mesh& mesh, int n);

  int dim() const noexcept { return elem_.degree + 1; }
  int index() const noexcept { return n_; }
  const Element& element() const noexcept { return elem_; }
  const std::vector<double>& collocation_points() const noexcept { return t_; }

  /// f_hat_p = (2p+1)/2 sum_i f(t_i) L_p(t_i) w_i.
  Eigen::VectorXd rhs_coeffs() const;
  /// Legendre coefficients of an arbitrary vector of values at the t_i.
  Eigen::VectorXd project(std::span<const double> values_at_points) const;
  /// b_tilde_p: coefficients of the history integral at the t_i.
  Eigen::VectorXd history_coeffs(std::span<const ElementSolution> prior, Execution exec = Execution::parallel) const;
  /// a_hat_p0(u_hat).
  Eigen::VectorXd local_operator(const Eigen::VectorXd& u_hat) const;
  /// d a_hat_p0 / d u_hat_q. Falls back to central differences when the
  /// problem has no analytic derivative.
  Eigen::MatrixXd local_jacobian(const Eigen::VectorXd& u_hat) const;
  /// The matrix A with a_hat = A u_hat when psi(s, u) = u.
  Eigen::MatrixXd linear_matrix() const;

 private:
  Eigen::VectorXd finite_difference_jacobian_column(const Eigen::VectorXd& u_hat, int q) const;

  const ProblemSpec& problem_;
  const Mesh& mesh_;
  int n_;
  Element elem_;
  std::vector<double> t_;
  std::vector<double> gauss_weights_;
  Eigen::MatrixXd legendre_at_t_;   // (i, p) -> L_p(t_i)
  std::vector<double> prefactor_;   // (t_i - t_n)^alpha w_i
  std::vector<double> jacobi_weights_;
  std::vector<double> sigma_;       // row-major (i, j)
  Eigen::MatrixXd basis_at_sigma_;  // (i * dim + j, q) -> L_q(sigma_ij)
};

/// H(t) at each of `points`: the sum over the prior elements of
/// sum_q w_tilde_q(t) G(t, s_q, u(s_q)). Parallel over prior elements.
void history_values(const ProblemSpec& problem, const Mesh& mesh, std::span<const ElementSolution> prior,
                    std::span<const double> points, std::span<double> out, Execution exec = Execution::parallel);

Eigen::VectorXd rhs_coeffs(const ProblemSpec& problem, const Mesh& mesh, int n);

Eigen::VectorXd history_coeffs(const ProblemSpec& problem, const Mesh& mesh, int n,
                               std::span<const ElementSolution> prior, Execution exec = Execution::parallel);

/// a_hat(u_hat) - f_hat + b_tilde. The history enters with a minus sign on
/// the right-hand side: local(t) = f(t) - history(t).
Eigen::VectorXd local_residual(const ProblemSpec& problem, const Mesh& mesh, int n, const Eigen::VectorXd& history,
                               const Eigen::VectorXd& u_hat);

Eigen::MatrixXd local_jacobian(const ProblemSpec& problem, const Mesh& mesh, int n, const Eigen::VectorXd& u_hat);

/// A, b = history coefficients, c = rhs coefficients; A u_hat = c - b.
struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

/// Throws DomainError unless the problem carries the linear flag.
LinearSystem assemble_linear(const ProblemSpec& problem, const Mesh& mesh, int n,
                             std::span<const ElementSolution> prior, Execution exec = Execution::parallel);

}  // namespace abel
