// History integral at the collocation points of the current element:
//
//   H(t) = sum_k sum_q w_tilde_{k,q}(t) G(t, s_{k,q}, u_k(s_{k,q}))
//
// over all solved elements k. This is the O(N^2) part of a solve. The serial
// loop is the reference; the OpenMP version splits the k-loop statically and
// reduces per-thread partial sums in thread order, so results are
// reproducible for a fixed thread count.

#include <algorithm>
#include <vector>

#ifdef ABEL_HAVE_OPENMP
#include <omp.h>
#endif

#include "abel/discretization.hpp"
#include "abel/errors.hpp"

namespace abel {
namespace {

struct Scratch {
  std::vector<double> weights;
  std::vector<double> work;
  explicit Scratch(int max_dim) : weights(max_dim), work(2 * max_dim) {}
};

void accumulate_element(const ProblemSpec& problem, const Mesh& mesh, const ElementSolution& prior,
                        std::span<const double> points, std::span<double> out, Scratch& scratch) {
  const Element elem = mesh.element(prior.n);
  const std::size_t dim = static_cast<std::size_t>(elem.degree) + 1;
  if (prior.lobatto_nodes.size() != dim || prior.lobatto_u.size() != dim) {
    throw DomainError("prior element " + std::to_string(prior.n) + " has no Lobatto cache");
  }
  const bool use_psi_cache = problem.separable() && prior.lobatto_psi.size() == dim;
  std::span<double> w(scratch.weights.data(), dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double t = points[i];
    history_weights_into(elem, t, problem.alpha, w, scratch.work);
    double sum = 0.0;
    if (use_psi_cache) {
      for (std::size_t q = 0; q < dim; ++q) sum += w[q] * problem.kappa(t, prior.lobatto_nodes[q]) * prior.lobatto_psi[q];
    } else {
      for (std::size_t q = 0; q < dim; ++q) {
        sum += w[q] * problem.integrand(t, prior.lobatto_nodes[q], prior.lobatto_u[q]);
      }
    }
    out[i] += sum;
  }
}

int max_dim_of(const Mesh& mesh, std::span<const ElementSolution> prior) {
  int max_dim = 1;
  for (const ElementSolution& e : prior) max_dim = std::max(max_dim, mesh.element(e.n).degree + 1);
  return max_dim;
}

void history_serial(const ProblemSpec& problem, const Mesh& mesh, std::span<const ElementSolution> prior,
                    std::span<const double> points, std::span<double> out) {
  Scratch scratch(max_dim_of(mesh, prior));
  for (const ElementSolution& e : prior) accumulate_element(problem, mesh, e, points, out, scratch);
}

#ifdef ABEL_HAVE_OPENMP
void history_parallel(const ProblemSpec& problem, const Mesh& mesh, std::span<const ElementSolution> prior,
                      std::span<const double> points, std::span<double> out) {
  const int max_dim = max_dim_of(mesh, prior);
  const int count = static_cast<int>(prior.size());
  const std::size_t npoints = points.size();
  const int threads = std::max(1, std::min(omp_get_max_threads(), count));
  std::vector<double> partial(static_cast<std::size_t>(threads) * npoints, 0.0);
  std::vector<std::exception_ptr> errors(threads);

#pragma omp parallel num_threads(threads)
  {
    const int tid = omp_get_thread_num();
    Scratch scratch(max_dim);
    std::span<double> mine(partial.data() + static_cast<std::size_t>(tid) * npoints, npoints);
#pragma omp for schedule(static)
    for (int k = 0; k < count; ++k) {
      if (errors[tid]) continue;
      try {
        accumulate_element(problem, mesh, prior[k], points, mine, scratch);
      } catch (...) {
        errors[tid] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (int tid = 0; tid < threads; ++tid) {
    for (std::size_t i = 0; i < npoints; ++i) out[i] += partial[static_cast<std::size_t>(tid) * npoints + i];
  }
}
#endif

}  // namespace

void history_values(const ProblemSpec& problem, const Mesh& mesh, std::span<const ElementSolution> prior,
                    std::span<const double> points, std::span<double> out, Execution exec) {
  if (out.size() != points.size()) throw DomainError("history output size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  if (prior.empty()) return;
#ifdef ABEL_HAVE_OPENMP
  // Small histories are not worth a parallel region.
  if (exec == Execution::parallel && prior.size() >= 16) {
    history_parallel(problem, mesh, prior, points, out);
    return;
  }
#else
  (void)exec;
#endif
  history_serial(problem, mesh, prior, points, out);
}

}  // namespace abel
