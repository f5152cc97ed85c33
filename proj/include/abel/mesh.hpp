#pragma once

#include <vector>

#include <json.hpp>

#include "abel/orthopoly.hpp"

namespace abel {

/// Partition 0 = t_0 < t_1 < ... < t_N = T with a polynomial degree per
/// element. Elements are indexed 0..N-1 here; element n covers
/// (t_n, t_{n+1}]. Immutable once built.
class Mesh {
 public:
  /// Throws DomainError unless breakpoints start at 0, strictly increase, and
  /// there is one degree >= 1 per element.
  Mesh(std::vector<double> breakpoints, std::vector<int> degrees);

  int size() const noexcept { return static_cast<int>(degrees_.size()); }
  double T() const noexcept { return breakpoints_.back(); }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  Element element(int n) const;
  double h(int n) const { return breakpoints_.at(n + 1) - breakpoints_.at(n); }
  double h_max() const noexcept;
  int min_degree() const noexcept;
  int max_degree() const noexcept;
  /// Unknown count L = sum (M_n + 1).
  int unknowns() const noexcept;
  bool uniform_degree() const noexcept;

  /// Index of the element (t_n, t_{n+1}] containing t, for 0 < t <= T.
  int locate(double t) const;

  Mesh with_degrees(std::vector<int> degrees) const { return Mesh(breakpoints_, std::move(degrees)); }
  /// Same mesh with every degree raised by `by`.
  Mesh raised(int by = 1) const;
  /// Element n split at its midpoint; both halves keep its degree.
  Mesh bisected(int n) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<int> degrees_;
};

/// N equal elements on [0, T], all of degree M.
Mesh uniform_mesh(int N, double T, int M);

/// sigma(lambda, t) = t_n + (lambda - t_n)(t - t_n)/h_n maps element n onto
/// (t_n, t]. Throws DomainError outside its preconditions.
double sigma(double lambda, double t, int n, const Mesh& mesh);

int locate(double t, const Mesh& mesh);

/// {"breakpoints": [...], "degrees": [...]}.
nlohmann::json to_json(const Mesh& mesh);

/// Accepts {"N": n, "T": T} or {"breakpoints": [...]}, together with
/// {"M": m} or {"degrees": [...]}. T defaults to `default_T`.
Mesh mesh_from_json(const nlohmann::json& j, double default_T = 1.0);

}  // namespace abel
