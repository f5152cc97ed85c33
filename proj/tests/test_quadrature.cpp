#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "abel/errors.hpp"
#include "abel/quadrature.hpp"
#include "oracle.hpp"

using namespace abel;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("gauss_legendre two points") {
  const QuadRule r = gauss_rule(QuadKind::gauss_legendre, kLegendre, 1);
  REQUIRE(r.size() == 2);
  CHECK(r.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_lobatto three points") {
  const QuadRule r = gauss_rule(QuadKind::gauss_lobatto, kLegendre, 2);
  REQUIRE(r.size() == 3);
  CHECK(r.nodes[0] == -1.0);
  CHECK(std::abs(r.nodes[1]) <= 1e-16);
  CHECK(r.nodes[2] == 1.0);
  CHECK(r.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(r.weights[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gauss_jacobi weight sum") {
  for (int M = 1; M <= 20; ++M) {
    const QuadRule r = gauss_rule(QuadKind::gauss_jacobi, JacobiParams{-0.5, 0.0}, M);
    CHECK(sum(r.weights) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  }
}

TEST_CASE("rule invariants") {
  for (QuadKind kind : {QuadKind::gauss_jacobi, QuadKind::gauss_legendre, QuadKind::gauss_lobatto}) {
    for (double a : {-0.8, -0.5, -0.2, 0.0}) {
      const JacobiParams p = kind == QuadKind::gauss_lobatto ? kLegendre : JacobiParams{a, 0.0};
      for (int M = 1; M <= 40; ++M) {
        const QuadRule r = gauss_rule(kind, p, M);
        REQUIRE(r.size() == static_cast<std::size_t>(M + 1));
        REQUIRE(r.weights.size() == r.nodes.size());
        for (std::size_t j = 0; j < r.size(); ++j) {
          CHECK(r.weights[j] > 0.0);
          CHECK(std::abs(r.nodes[j]) <= 1.0);
          if (j) CHECK(r.nodes[j] > r.nodes[j - 1]);
        }
        if (kind == QuadKind::gauss_lobatto) {
          CHECK(r.nodes.front() == -1.0);
          CHECK(r.nodes.back() == 1.0);
        }
      }
    }
  }
}

TEST_CASE("gauss_rule rejects bad input") {
  CHECK_THROWS_AS(gauss_rule(QuadKind::gauss_lobatto, JacobiParams{-0.5, 0.0}, 3), DomainError);
  CHECK_THROWS_AS(gauss_rule(QuadKind::gauss_jacobi, JacobiParams{-1.5, 0.0}, 3), DomainError);
  CHECK_THROWS_AS(gauss_rule(QuadKind::gauss_legendre, kLegendre, -1), DomainError);
  CHECK_THROWS_AS(gauss_rule(QuadKind::gauss_lobatto, kLegendre, 0), DomainError);
}

TEST_CASE("Gauss exactness on random polynomials of degree 2M+1") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (double a : {-0.8, -0.5, -0.2, 0.0}) {
    for (int M = 1; M <= 10; ++M) {
      const QuadRule& r = cached_rule(QuadKind::gauss_jacobi, JacobiParams{a, 0.0}, M);
      std::vector<double> c(2 * M + 2);
      for (double& x : c) x = coef(rng);
      oracle::Big exact = 0;
      for (std::size_t k = 0; k < c.size(); ++k) exact += oracle::Big(c[k]) * oracle::jacobi_monomial_moment(a, int(k));
      double q = 0.0;
      for (std::size_t j = 0; j < r.size(); ++j) {
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * r.nodes[j] + c[k];
        q += r.weights[j] * v;
      }
      const double e = exact.convert_to<double>();
      CHECK(std::abs(q - e) <= 1e-10 * std::abs(e));
    }
  }
}

TEST_CASE("Lobatto exactness to degree 2M-1") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int M = 1; M <= 12; ++M) {
    const QuadRule& r = lobatto_rule(M);
    std::vector<double> c(2 * M);
    for (double& x : c) x = coef(rng);
    double exact = 0.0;
    for (std::size_t k = 0; k < c.size(); k += 2) exact += c[k] * 2.0 / (k + 1.0);
    double q = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      double v = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * r.nodes[j] + c[k];
      q += r.weights[j] * v;
    }
    CHECK(std::abs(q - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("discrete orthogonality") {
  for (double a : {-0.8, -0.5, 0.0}) {
    const JacobiParams p{a, 0.0};
    for (int M = 1; M <= 10; ++M) {
      const QuadRule r = gauss_rule(QuadKind::gauss_jacobi, p, M);
      for (int i = 0; i <= M; ++i) {
        for (int k = 0; k <= M; ++k) {
          double s = 0.0;
          for (std::size_t j = 0; j < r.size(); ++j) s += jacobi_eval(p, i, r.nodes[j]) * jacobi_eval(p, k, r.nodes[j]) * r.weights[j];
          const double expected = i == k ? jacobi_norm_gamma(p, i) : 0.0;
          CHECK(std::abs(s - expected) <= 1e-10 * jacobi_norm_gamma(p, i));
        }
      }
    }
  }
}

TEST_CASE("cached_rule returns the same rule") {
  const QuadRule& a = cached_rule(QuadKind::gauss_jacobi, JacobiParams{-0.3, 0.0}, 6);
  const QuadRule& b = cached_rule(QuadKind::gauss_jacobi, JacobiParams{-0.3, 0.0}, 6);
  CHECK(&a == &b);
  const QuadRule fresh = gauss_rule(QuadKind::gauss_jacobi, JacobiParams{-0.3, 0.0}, 6);
  CHECK(a.nodes == fresh.nodes);
}

TEST_CASE("shift_nodes") {
  QuadRule mid;
  mid.nodes = {-1.0, 0.0, 1.0};
  mid.weights = {1.0, 1.0, 1.0};
  const auto a = shift_nodes(mid, Element{0.0, 2.0, 2});
  CHECK(a[1] == 1.0);
  const auto b = shift_nodes(mid, Element{1.0, 1.5, 2});
  CHECK(b[2] == 1.5);
  const auto c = shift_nodes(legendre_rule(1), Element{0.0, 1.0, 1});
  CHECK(c[0] == doctest::Approx(0.5 * (1.0 - 1.0 / std::sqrt(3.0))).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(0.5 * (1.0 + 1.0 / std::sqrt(3.0))).epsilon(1e-15));
}

TEST_CASE("singular_element_integral") {
  const Element unit{0.0, 1.0, 3};
  auto integrate = [&](auto g, double t, double alpha) {
    const auto tau = singular_nodes(unit, t, alpha);
    std::vector<double> values;
    for (double s : tau) values.push_back(g(s));
    return singular_element_integral(values, unit, t, alpha);
  };
  CHECK(integrate([](double) { return 1.0; }, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate([](double) { return 1.0; }, 0.25, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate([](double s) { return s; }, 1.0, 0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  // degree 3 polynomial, alpha 0.3
  auto g = [](double s) { return 1.0 - 2.0 * s + 3.0 * s * s * s; };
  const double t = 0.7;
  CHECK(integrate(g, t, 0.3) == doctest::Approx(oracle::weakly_singular(g, 0.0, t, t, 0.3)).epsilon(1e-12));
  std::vector<double> four(4, 1.0);
  CHECK_THROWS_AS(singular_element_integral(four, unit, 0.0, 0.5), DomainError);
}

TEST_CASE("modified moments") {
  const Element e{0.0, 1.0, 6};
  SUBCASE("mu_0 closed form") {
    for (double alpha : {0.2, 0.5, 0.9}) {
      for (double t : {1.0, 1.001, 1.5, 3.0, 40.0}) {
        const auto mu = modified_moments(e, t, alpha, 6);
        const double expected = (std::pow(t, alpha) - std::pow(t - 1.0, alpha)) / alpha;
        CHECK(mu[0] == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("alpha = 1 kills p >= 1") {
    const auto mu = modified_moments(e, 2.5, 1.0, 6);
    CHECK(mu[0] == doctest::Approx(1.0));
    for (int p = 1; p <= 6; ++p) CHECK(std::abs(mu[p]) <= 1e-14);
  }
  SUBCASE("oracle values") {
    for (double t : {1.0, 1.0 + 1e-6, 1.1, 2.0, 10.0}) {
      const auto mu = modified_moments(e, t, 0.5, 6);
      for (int p = 0; p <= 6; ++p) {
        const double expected =
            oracle::weakly_singular([&](double s) { return oracle::legendre(p, 2.0 * s - 1.0); }, 0.0, 1.0, t, 0.5);
        CHECK(std::abs(mu[p] - expected) <= 1e-11 * std::max(1.0, std::abs(mu[0])));
      }
    }
  }
  CHECK_THROWS_AS(modified_moments(e, 0.9, 0.5, 3), DomainError);
}

TEST_CASE("history weights") {
  SUBCASE("alpha = 1 gives scaled Lobatto weights") {
    const Element e{0.3, 0.8, 5};
    const auto w = history_weights(e, 2.0, 1.0);
    const QuadRule& lob = lobatto_rule(5);
    for (int j = 0; j <= 5; ++j) CHECK(w.values[j] == doctest::Approx(0.5 * e.width() * lob.weights[j]).epsilon(1e-12));
  }
  SUBCASE("constant sum") {
    const auto w = history_weights(Element{0.0, 1.0, 4}, 2.0, 0.5);
    CHECK(sum(w.values) == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
    for (double d : {0.0, 1e-12, 1e-8, 1e-3, 0.5, 10.0}) {
      for (double alpha : {0.1, 0.4, 0.75, 1.0}) {
        const Element e{1.0, 1.25, 8};
        const double t = e.right + d;
        const auto h = history_weights(e, t, alpha);
        const double expected = (std::pow(t - e.left, alpha) - std::pow(t - e.right, alpha)) / alpha;
        CHECK(std::abs(sum(h.values) - expected) <= 1e-10 * expected);
      }
    }
  }
  SUBCASE("near-singular oracle, alpha 0.3, M 4") {
    const Element e{0.0, 1.0, 4};
    const auto w = history_weights(e, 1.1, 0.3);
    const auto nodes = shift_nodes(lobatto_rule(4), e);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double expected =
          oracle::weakly_singular([&](double s) { return oracle::lagrange(nodes, j, s); }, 0.0, 1.0, 1.1, 0.3);
      CHECK(std::abs(w.values[j] - expected) <= 1e-9);
    }
  }
  SUBCASE("reproduces polynomials of degree <= M") {
    const Element e{0.5, 0.75, 7};
    const double t = 0.9, alpha = 0.45;
    const auto w = history_weights(e, t, alpha);
    const auto nodes = shift_nodes(lobatto_rule(7), e);
    auto phi = [](double s) { return std::cos(0.0) + s - 4.0 * std::pow(s, 5) + 2.0 * std::pow(s, 7); };
    double q = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) q += w.values[j] * phi(nodes[j]);
    CHECK(q == doctest::Approx(oracle::weakly_singular(phi, e.left, e.right, t, alpha)).epsilon(1e-11));
  }
  SUBCASE("equals the Lagrange transform of the moments") {
    const Element e{0.0, 0.5, 6};
    const double t = 0.75, alpha = 0.6;
    const auto mu = modified_moments(e, t, alpha, 6);
    const auto& C = lobatto_to_legendre(6);
    const auto w = history_weights(e, t, alpha);
    for (int j = 0; j <= 6; ++j) {
      double expected = 0.0;
      for (int p = 0; p <= 6; ++p) expected += C[j * 7 + p] * mu[p];
      CHECK(w.values[j] == doctest::Approx(expected).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(history_weights(Element{0.0, 1.0, 2}, 0.5, 0.5), DomainError);
}

TEST_CASE("lobatto_to_legendre expands the Lagrange basis") {
  const int M = 6;
  const auto& C = lobatto_to_legendre(M);
  const QuadRule& lob = lobatto_rule(M);
  for (int j = 0; j <= M; ++j) {
    for (double x : {-0.9, -0.3, 0.0, 0.41, 0.77}) {
      double v = 0.0;
      for (int p = 0; p <= M; ++p) v += C[j * (M + 1) + p] * oracle::legendre(p, x);
      CHECK(v == doctest::Approx(oracle::lagrange(lob.nodes, j, x)).epsilon(1e-12));
    }
  }
}
