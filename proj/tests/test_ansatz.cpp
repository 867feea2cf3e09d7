#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "sdgeom/ansatz.hpp"
#include "sdgeom/curvature.hpp"
#include "sdgeom/random.hpp"

using namespace sdgeom;

namespace {

ChartPoint point(Chart c, std::initializer_list<double> xs, double radius = 1.0) {
  ChartPoint p;
  p.chart = c;
  p.radius = radius;
  int i = 0;
  for (double x : xs) p.coords[static_cast<std::size_t>(i++)] = x;
  return p;
}

ChartPoint gh_point(SplitMix64& rng) {
  return point(Chart::R1xR3, {rng.uniform(-1, 1), rng.uniform(0.2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
}

Vec4 shell_point(SplitMix64& rng, double lo, double hi) {
  Vec4 q(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
  return rng.uniform(lo, hi) * q.normalized();
}

FrameOneForm perturbed_theta1() {
  return FrameOneForm::from_exprs(parse_expr("1 + 0.5*(x1^2 + x4^2 - x2^2 - x3^2)"), parse_expr("0"),
                                  parse_expr("0"));
}

}  // namespace

TEST_CASE("Gibbons-Hawking metric") {
  const GHDatum d = taub_nut_like();
  const MetricField g = gh_metric(d);
  const MetricField b = bryant_metric(bryant_from_gh(d));
  SplitMix64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const ChartPoint p = gh_point(rng);
    const double r = std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    const double u = 1.0 + 0.5 / r;
    const Mat4 m = g(p).value();
    CHECK(m.determinant() == doctest::Approx(u * u).epsilon(1e-12));
    CHECK(m(0, 0) == doctest::Approx(1.0 / u).epsilon(1e-14));
    CHECK((b(p).value() - m).cwiseAbs().maxCoeff() < 1e-13);
    const auto cb = curvature_bundle(g, p);
    CHECK(cb.ricci_norm() < 1e-10);
    CHECK(cb.weyl_half_min() < 1e-10);
    CHECK(cb.riemann_norm() > 1e-3);
  }
  const MetricField flat = gh_metric(gh_datum(parse_expr("1"), {parse_expr("0"), parse_expr("0"), parse_expr("0")}));
  const ChartPoint p = point(Chart::R1xR3, {0.3, 1, 2, 3});
  CHECK((flat(p).value() - Mat4::Identity()).norm() == 0.0);
  CHECK(curvature_bundle(flat, p).riemann_norm() == 0.0);
}

TEST_CASE("Beltrami metric") {
  SplitMix64 rng(22);
  const MetricField flat = beltrami_metric({FrameOneForm::zero()});
  const MetricField eh = beltrami_metric({FrameOneForm::left_invariant(1, 0, 0)});
  const MetricField pert = beltrami_metric({perturbed_theta1()});
  for (int t = 0; t < 30; ++t) {
    const Vec4 x = shell_point(rng, 0.5, 2.0);
    const ChartPoint p = point(Chart::R4_CARTESIAN, {x[0], x[1], x[2], x[3]});
    CHECK((flat(p).value() - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    const Vec4 radial = x.normalized();
    CHECK(radial.dot(eh(p).value() * radial) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(radial.dot(pert(p).value() * radial) == doctest::Approx(1.0).epsilon(1e-14));
    const auto cb = curvature_bundle(eh, p);
    CHECK(cb.ricci_norm() < 1e-9);
    CHECK(cb.weyl_half_min() < 1e-9);
    CHECK(std::max(cb.weyl_plus, cb.weyl_minus) > 1e-3);
  }
}

TEST_CASE("Beltrami and Bryant forms agree under t = rho^2/2") {
  SplitMix64 rng(23);
  for (const FrameOneForm& A : {FrameOneForm::left_invariant(1, 0, 0), perturbed_theta1()}) {
    const MetricField g = beltrami_metric({A});
    const MetricField b = bryant_metric(bryant_from_beltrami(A));
    for (int t = 0; t < 20; ++t) {
      const Vec4 x = shell_point(rng, 0.5, 2.0);
      const double rho = x.norm();
      const Vec3 y = ambient_to_stereo(x / rho, 1.0);
      const auto c1 = curvature_bundle(g, point(Chart::R4_CARTESIAN, {x[0], x[1], x[2], x[3]}));
      const auto c2 = curvature_bundle(b, point(Chart::PRODUCT_RHO_STEREO, {rho * rho / 2, y[0], y[1], y[2]}));
      const double scale = std::max(1.0, c1.riemann_norm());
      CHECK(std::abs(c1.scalar - c2.scalar) < 1e-9 * scale);
      CHECK(std::abs(c1.riemann_norm() - c2.riemann_norm()) < 1e-9 * scale);
      CHECK(std::abs(c1.ricci_norm() - c2.ricci_norm()) < 1e-9 * scale);
      CHECK(std::abs(c1.weyl_half_min() - c2.weyl_half_min()) < 1e-9 * scale);
      CHECK(std::abs(std::max(c1.weyl_plus, c1.weyl_minus) - std::max(c2.weyl_plus, c2.weyl_minus)) < 1e-9 * scale);
    }
  }
}

TEST_CASE("stereographic chart round trip") {
  SplitMix64 rng(24);
  for (double R : {1.0, 2.0}) {
    for (int t = 0; t < 20; ++t) {
      const Vec3 y(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
      const Vec4 q = stereo_to_ambient(y, R);
      CHECK(std::abs(q.norm() - R) < 1e-14);
      CHECK((ambient_to_stereo(q, R) - y).norm() < 1e-12);
    }
  }
}

TEST_CASE("warped product ODE") {
  const WarpedSolution cone = warped_ode_solve(0.0, 2.0, 3, 1.0, 1.0, 1.0, 3.0, -1);
  const WarpedSolution hyp = warped_ode_solve(-3.0, 0.0, 3, 1.0, 0.0, -1.0, 1.0, -1);
  CHECK_FALSE(cone.truncated());
  for (double t = 1.0; t <= 3.0; t += 0.125) {
    const auto l = cone(t);
    CHECK(std::abs(l[0] - 1.0 / t) < 1e-10);
    CHECK(std::abs(l[1] + 1.0 / (t * t)) < 1e-9);
    CHECK(std::abs(cone.residual(t)) < 1e-9);
  }
  for (double t = -1.0; t <= 1.0; t += 0.125) {
    CHECK(std::abs(hyp(t)[0] - std::exp(-t)) < 1e-10);
    CHECK(std::abs(hyp.residual(t)) < 1e-9);
  }
  CHECK_THROWS(cone(3.5));
  CHECK(warped_ode_residual(0.0, 2.0, 3, 0.5, -0.25) == 0.0);
  CHECK(std::abs(warped_ode_residual(0.0, 2.0, 3, 0.5, 0.3)) > 1e-3);
  CHECK_THROWS_AS(warped_ode_solve(3.0, 0.0, 3, 1.0, 0.0, 0.0, 1.0, -1), std::domain_error);
}

TEST_CASE("warped metrics") {
  SplitMix64 rng(25);
  WarpedDatum cone;
  cone.base = BaseGeometry::sphere(1.0);
  cone.cN = 2.0;
  cone.lambda = field_from_expr(parse_expr("1/t"), Chart::PRODUCT_RHO_STEREO);
  WarpedDatum hyp;
  hyp.base = BaseGeometry::flat();
  hyp.cM = -3.0;
  hyp.lambda = field_from_expr(parse_expr("exp(-t)"), Chart::R1xR3);
  const MetricField gc = warped_metric(cone), gh = warped_metric(hyp);
  for (int t = 0; t < 20; ++t) {
    const double s = rng.uniform(0.5, 3);
    const ChartPoint pc = point(Chart::PRODUCT_RHO_STEREO, {s, rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const auto bc = curvature_bundle(gc, pc);
    CHECK(bc.riemann_norm() < 1e-9);
    CHECK(gc(pc).value()(0, 0) == 1.0);
    const ChartPoint ph = point(Chart::R1xR3, {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    CHECK(constant_curvature_residual(curvature_bundle(gh, ph), -1.0) < 1e-9);
  }
}

TEST_CASE("half self-dual metric") {
  HalfSDDatum d;
  d.base = BaseGeometry::flat();
  d.A = zero_one_form();
  const MetricField g = half_sd_metric(d);
  const Mat4 m = g(point(Chart::R1xR3, {0.8, 0.1, -0.2, 0.3})).value();
  CHECK(m(0, 0) == doctest::Approx(1.0 / 0.8).epsilon(1e-15));
  CHECK(m(1, 1) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(m(0, 1) == 0.0);
  CHECK_THROWS(curvature_bundle(g, point(Chart::R1xR3, {-0.5, 0, 0, 0})));

  HalfSDDatum c;
  c.base = BaseGeometry::flat();
  c.A = {field_from_expr(parse_expr("cos(x3)"), Chart::R1xR3), field_from_expr(parse_expr("sin(x3)"), Chart::R1xR3),
         constant_fn(0.0)};
  const MetricField gc = half_sd_metric(c);
  SplitMix64 rng(26);
  for (int t = 0; t < 20; ++t) {
    const auto b = curvature_bundle(
        gc, point(Chart::R1xR3, {rng.uniform(0.5, 2), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}));
    CHECK(b.weyl_half_min() < 1e-10);
    CHECK(einstein_residual(b) > 1e-3);
  }
}
