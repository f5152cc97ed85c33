#pragma once

#include <functional>

#include "abel/solver.hpp"

namespace abel {

using ExactFn = std::function<double(double)>;

/// Discrete L2 error at the shifted (M_n+1)-point Gauss-Legendre nodes of
/// every element.
double error_E1(const PiecewiseSolution& solution, const ExactFn& exact);

/// Max error over `samples_per_element` equispaced points per element. The
/// right endpoint is included; the left one is replaced by a point half a
/// grid step inside.
double error_E2(const PiecewiseSolution& solution, const ExactFn& exact, int samples_per_element = 65);

/// log2(coarse / fine). Throws DomainError unless both are positive.
double convergence_order(double e_coarse, double e_fine);

}  // namespace abel
