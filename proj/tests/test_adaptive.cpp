#include <doctest.h>

#include <cmath>
#include <limits>

#include "abel/adaptive.hpp"
#include "abel/benchmarks.hpp"
#include "abel/errors.hpp"

using namespace abel;

TEST_CASE("adaptive: infinite tolerance stops after the first solve") {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex3_branca);
  AdaptiveOptions options;
  options.tol = std::numeric_limits<double>::infinity();
  const AdaptiveResult r = adaptive_solve(b.spec, uniform_mesh(2, 1.0, 2), options, b.exact);
  CHECK(r.trace.steps.size() == 1);
  CHECK(r.solution.mesh.unknowns() == 6);
}

TEST_CASE("adaptive: p_first on polynomial solutions") {
  AdaptiveOptions options;
  options.tol = 1e-13;
  for (BenchmarkId id : {BenchmarkId::ex3_branca, BenchmarkId::ex4_liu}) {
    const BenchmarkProblem b = make_benchmark(id);
    const AdaptiveResult r = adaptive_solve(b.spec, uniform_mesh(1, 1.0, 2), options, b.exact);
    CHECK(r.solution.mesh.unknowns() <= 8);
    CHECK(error_E2(r.solution, *b.exact) <= 1e-12);
    for (std::size_t i = 1; i < r.trace.steps.size(); ++i) CHECK(r.trace.steps[i].L > r.trace.steps[i - 1].L);
  }
}

TEST_CASE("adaptive: discontinuous solution with the jump in the mesh") {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex5_discontinuous);
  AdaptiveOptions options;
  options.tol = 1e-6;
  options.error_metric = ErrorMetric::E1_vs_reference;
  const AdaptiveResult r = adaptive_solve(b.spec, Mesh({0.0, 0.5, 1.0}, {2, 2}), options, b.exact);
  CHECK(r.solution.mesh.unknowns() <= 22);
  CHECK(error_E1(r.solution, *b.exact) <= 1e-6);
}

TEST_CASE("adaptive: budget") {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex2_plato);
  AdaptiveOptions options;
  options.tol = 1e-14;
  options.max_L = 10;
  try {
    adaptive_solve(b.spec, uniform_mesh(2, 1.0, 1), options, b.exact);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.final_estimate() > 1e-14);
    REQUIRE(!e.trace().steps.empty());
    CHECK(e.trace().steps.back().L <= 10);
    CHECK(e.final_estimate() == e.trace().steps.back().estimate);
  }
  options.max_L = 3;
  CHECK_THROWS_AS(adaptive_solve(b.spec, uniform_mesh(2, 1.0, 1), options, b.exact), DomainError);
  options.max_L = 100;
  options.tol = 0.0;
  CHECK_THROWS_AS(adaptive_solve(b.spec, uniform_mesh(2, 1.0, 1), options, b.exact), DomainError);
}

TEST_CASE("adaptive: strategies") {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex2_plato);
  AdaptiveOptions options;
  options.tol = 5e-7;
  options.max_L = 200;

  options.strategy = RefineStrategy::h_first;
  const AdaptiveResult h = adaptive_solve(b.spec, uniform_mesh(2, 1.0, 3), options, b.exact);
  CHECK(error_E2(h.solution, *b.exact) <= 5e-7);
  for (std::size_t i = 1; i < h.trace.steps.size(); ++i) {
    CHECK(h.trace.steps[i].mesh.size() == h.trace.steps[i - 1].mesh.size() + 1);
    CHECK(h.trace.steps[i].mesh.max_degree() == 3);
  }

  options.strategy = RefineStrategy::alternate;
  const AdaptiveResult alt = adaptive_solve(b.spec, uniform_mesh(2, 1.0, 3), options, b.exact);
  CHECK(error_E2(alt.solution, *b.exact) <= 5e-7);
  REQUIRE(alt.trace.steps.size() >= 3);
  CHECK(alt.trace.steps[1].mesh.size() == 2);
  CHECK(alt.trace.steps[1].L == alt.trace.steps[0].L + 1);
  CHECK(alt.trace.steps[2].mesh.size() == 3);

  CHECK(parse_strategy("h_first") == RefineStrategy::h_first);
  CHECK(to_string(RefineStrategy::alternate) == "alternate");
  CHECK_THROWS_AS(parse_strategy("q_first"), DomainError);
}

TEST_CASE("adaptive: successive differences without a reference") {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex4_liu);
  AdaptiveOptions options;
  options.tol = 1e-10;
  const AdaptiveResult r = adaptive_solve(b.spec, uniform_mesh(1, 1.0, 1), options);
  CHECK(std::isinf(r.trace.steps.front().estimate));
  CHECK(r.trace.steps.size() >= 2);
  CHECK(error_E2(r.solution, *b.exact) <= 1e-10);
}

TEST_CASE("adaptive: trace export and reproducibility") {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex3_branca);
  AdaptiveOptions options;
  options.tol = 1e-12;
  const AdaptiveResult r1 = adaptive_solve(b.spec, uniform_mesh(1, 1.0, 1), options, b.exact);
  const AdaptiveResult r2 = adaptive_solve(b.spec, uniform_mesh(1, 1.0, 1), options, b.exact);
  REQUIRE(r1.trace.steps.size() == r2.trace.steps.size());
  for (std::size_t i = 0; i < r1.trace.steps.size(); ++i) {
    CHECK(r1.trace.steps[i].L == r2.trace.steps[i].L);
    CHECK(r1.trace.steps[i].estimate == r2.trace.steps[i].estimate);
  }

  const nlohmann::json j = r1.trace.to_json();
  REQUIRE(j.contains("steps"));
  CHECK(j["steps"].size() == r1.trace.steps.size());
  CHECK(j["steps"][0]["L"] == 2);
  CHECK(j["steps"][0]["mesh"]["degrees"] == nlohmann::json::array({1}));

  const std::string csv = r1.trace.to_csv();
  CHECK(csv.rfind("step,N,L,estimate,elapsed_s,degrees\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r1.trace.steps.size() + 1));
}

TEST_CASE("tail indicators") {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex3_branca);
  const PiecewiseSolution sol = solve(b.spec, uniform_mesh(1, 1.0, 4));
  const auto tails = tail_indicators(sol);
  REQUIRE(tails.size() == 1);
  // u = t^3 has no degree-4 component
  CHECK(tails[0] <= 1e-12);
  const PiecewiseSolution low = solve(b.spec, uniform_mesh(1, 1.0, 3));
  // c_3 = 1/20 for t^3 on [0, 1], scaled by sqrt(1/7)
  CHECK(tail_indicators(low)[0] == doctest::Approx(0.05 / std::sqrt(7.0)).epsilon(1e-9));
  CHECK(successive_difference(sol, sol) == 0.0);
}
