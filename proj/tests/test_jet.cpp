#include <doctest.h>

#include <cmath>

#include "sdgeom/corpus.hpp"
#include "sdgeom/expr.hpp"
#include "sdgeom/jet.hpp"
#include "sdgeom/random.hpp"

using namespace sdgeom;

namespace {

ChartPoint r4(double a, double b, double c, double d) {
  ChartPoint p;
  p.chart = Chart::R4_CARTESIAN;
  p.coords = {a, b, c, d};
  return p;
}

Jet2 random_jet(SplitMix64& rng) {
  Jet2 j(rng.uniform(0.5, 2.0));
  for (auto& g : j.grad) g = rng.gaussian();
  for (int a = 0; a < kMaxDim; ++a)
    for (int b = a; b < kMaxDim; ++b) j.dd(a, b) = j.dd(b, a) = rng.gaussian();
  return j;
}

}  // namespace

TEST_CASE("product and power rules") {
  const Jet2 j = eval_jet2(parse_expr("x1*x2"), r4(2, 3, 0, 0));
  CHECK(j.value == 6.0);
  CHECK(j.d(0) == 3.0);
  CHECK(j.d(1) == 2.0);
  CHECK(j.d(2) == 0.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(j.dd(a, b) == ((a + b == 1) ? 1.0 : 0.0));

  const Jet2 k = eval_jet2(parse_expr("x1^2"), r4(3, 0, 0, 0));
  CHECK(k.value == 9.0);
  CHECK(k.d(0) == 6.0);
  CHECK(k.dd(0, 0) == 2.0);
}

TEST_CASE("Leibniz rule and mixed partials on random jets") {
  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Jet2 a = random_jet(rng), b = random_jet(rng);
    const Jet2 p = a * b;
    for (int i = 0; i < 4; ++i) {
      CHECK(p.d(i) == doctest::Approx(a.d(i) * b.value + a.value * b.d(i)).epsilon(1e-14));
      for (int k = 0; k < 4; ++k) {
        const double expect = a.dd(i, k) * b.value + a.d(i) * b.d(k) + a.d(k) * b.d(i) + a.value * b.dd(i, k);
        CHECK(p.dd(i, k) == doctest::Approx(expect).epsilon(1e-13));
      }
    }
    const Jet2 q = sin(a) * exp(b) / (1.0 + a * a);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) CHECK(q.dd(i, k) == q.dd(k, i));
  }
}

TEST_CASE("finite-difference oracle") {
  const Jet2 f = fd_oracle(parse_expr("x1^2"), r4(3, 0, 0, 0), 1e-4);
  CHECK(std::abs(f.d(0) - 6.0) < 1e-7);
  CHECK_THROWS_AS(fd_oracle(parse_expr("log(x1)"), r4(1e-5, 0, 0, 0), 1e-4), DomainError);
  CHECK_THROWS_AS(fd_oracle(parse_expr("x1"), r4(1, 0, 0, 0), 0.0), std::invalid_argument);
}

TEST_CASE("AD agrees with central differences on the corpus") {
  SplitMix64 rng(5);
  double grad = 0.0, hess = 0.0;
  for (const Expr& e : expression_corpus(7, 30)) {
    for (int t = 0; t < 20; ++t) {
      const ChartPoint p = r4(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      const Jet2 ad = eval_jet2(e, p);
      const Jet2 fd = fd_oracle(e, p, 1e-4);
      CHECK(ad.value == fd.value);
      for (int a = 0; a < 4; ++a) {
        grad = std::max(grad, std::abs(ad.d(a) - fd.d(a)) / std::max(1.0, std::abs(fd.d(a))));
        for (int b = 0; b < 4; ++b)
          hess = std::max(hess, std::abs(ad.dd(a, b) - fd.dd(a, b)) / std::max(1.0, std::abs(fd.dd(a, b))));
      }
    }
  }
  CHECK(grad < 1e-6);
  CHECK(hess < 1e-4);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_jet2(parse_expr("sqrt(x1)"), r4(-1, 0, 0, 0)), DomainError);
  CHECK_THROWS_AS(eval_jet2(parse_expr("1/x1"), r4(0, 0, 0, 0)), DomainError);
  CHECK_THROWS_AS(eval_jet2(parse_expr("x1^0.5"), r4(-2, 0, 0, 0)), DomainError);
}
