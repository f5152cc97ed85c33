#include "abel/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abel/errors.hpp"

namespace abel {

Mesh::Mesh(std::vector<double> breakpoints, std::vector<int> degrees)
    : breakpoints_(std::move(breakpoints)), degrees_(std::move(degrees)) {
  if (breakpoints_.size() < 2) throw DomainError("mesh needs at least one element");
  if (breakpoints_.front() != 0.0) throw DomainError("mesh must start at t = 0");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) throw DomainError("mesh breakpoints must strictly increase");
  }
  if (degrees_.size() + 1 != breakpoints_.size()) {
    throw DomainError("mesh needs one degree per element (" + std::to_string(breakpoints_.size() - 1) +
                      " elements, " + std::to_string(degrees_.size()) + " degrees)");
  }
  for (int m : degrees_) {
    if (m < 1) throw DomainError("element degrees must be >= 1");
  }
}

Element Mesh::element(int n) const {
  if (n < 0 || n >= size()) throw DomainError("element index out of range: " + std::to_string(n));
  return Element{breakpoints_[n], breakpoints_[n + 1], degrees_[n]};
}

double Mesh::h_max() const noexcept {
  double h = 0.0;
  for (int n = 0; n < size(); ++n) h = std::max(h, breakpoints_[n + 1] - breakpoints_[n]);
  return h;
}

int Mesh::min_degree() const noexcept { return *std::min_element(degrees_.begin(), degrees_.end()); }
int Mesh::max_degree() const noexcept { return *std::max_element(degrees_.begin(), degrees_.end()); }

int Mesh::unknowns() const noexcept {
  int L = 0;
  for (int m : degrees_) L += m + 1;
  return L;
}

bool Mesh::uniform_degree() const noexcept { return min_degree() == max_degree(); }

int Mesh::locate(double t) const {
  if (!(t > 0.0) || t > T()) throw DomainError("t = " + std::to_string(t) + " outside (0, T]");
  // First breakpoint >= t closes the element that contains t.
  auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  return static_cast<int>(it - breakpoints_.begin()) - 1;
}

Mesh Mesh::raised(int by) const {
  std::vector<int> degrees = degrees_;
  for (int& m : degrees) m += by;
  return Mesh(breakpoints_, std::move(degrees));
}

Mesh Mesh::bisected(int n) const {
  if (n < 0 || n >= size()) throw DomainError("element index out of range: " + std::to_string(n));
  std::vector<double> breakpoints = breakpoints_;
  std::vector<int> degrees = degrees_;
  breakpoints.insert(breakpoints.begin() + n + 1, 0.5 * (breakpoints_[n] + breakpoints_[n + 1]));
  degrees.insert(degrees.begin() + n, degrees_[n]);
  return Mesh(std::move(breakpoints), std::move(degrees));
}

Mesh uniform_mesh(int N, double T, int M) {
  if (N < 1) throw DomainError("uniform mesh needs N >= 1");
  if (!(T > 0.0)) throw DomainError("uniform mesh needs T > 0");
  std::vector<double> breakpoints(N + 1);
  for (int n = 0; n <= N; ++n) breakpoints[n] = T * static_cast<double>(n) / N;
  breakpoints.back() = T;
  return Mesh(std::move(breakpoints), std::vector<int>(N, M));
}

double sigma(double lambda, double t, int n, const Mesh& mesh) {
  const Element e = mesh.element(n);
  const double slack = kDomainSlack * std::max(1.0, std::abs(e.right));
  if (lambda < e.left - slack || lambda > e.right + slack) throw DomainError("sigma: lambda outside element");
  if (!(t > e.left) || t > e.right + slack) throw DomainError("sigma: t outside element");
  return e.left + (lambda - e.left) * (t - e.left) / e.width();
}

int locate(double t, const Mesh& mesh) { return mesh.locate(t); }

nlohmann::json to_json(const Mesh& mesh) {
  return nlohmann::json{{"breakpoints", mesh.breakpoints()}, {"degrees", mesh.degrees()}};
}

Mesh mesh_from_json(const nlohmann::json& j, double default_T) {
  std::vector<double> breakpoints;
  if (j.contains("breakpoints")) {
    breakpoints = j.at("breakpoints").get<std::vector<double>>();
  } else if (j.contains("N")) {
    const int N = j.at("N").get<int>();
    const double T = j.value("T", default_T);
    if (N < 1 || !(T > 0.0)) throw DomainError("mesh needs N >= 1 and T > 0");
    breakpoints = uniform_mesh(N, T, 1).breakpoints();
  } else {
    throw DomainError("mesh JSON needs \"breakpoints\" or \"N\"");
  }
  const std::size_t elements = breakpoints.empty() ? 0 : breakpoints.size() - 1;
  std::vector<int> degrees;
  if (j.contains("degrees")) {
    degrees = j.at("degrees").get<std::vector<int>>();
  } else if (j.contains("M")) {
    degrees.assign(elements, j.at("M").get<int>());
  } else {
    throw DomainError("mesh JSON needs \"degrees\" or \"M\"");
  }
  return Mesh(std::move(breakpoints), std::move(degrees));
}

}  // namespace abel
