#include <doctest.h>

#include "sdgeom/ansatz.hpp"
#include "sdgeom/kahler.hpp"
#include "sdgeom/random.hpp"

using namespace sdgeom;

namespace {

ChartPoint point(Chart c, const Vec4& x) {
  ChartPoint p;
  p.chart = c;
  for (int i = 0; i < 4; ++i) p.coords[static_cast<std::size_t>(i)] = x[i];
  return p;
}

Vec4 shell(SplitMix64& rng) {
  Vec4 q(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
  return rng.uniform(0.5, 2.0) * q.normalized();
}

void check_hermitian(const ComplexStructure& cs) {
  CHECK((cs.J * cs.J + Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((cs.J.transpose() * cs.g * cs.J - cs.g).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((cs.omega + cs.omega.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

}  // namespace

TEST_CASE("Eguchi-Hanson is Kahler") {
  const KahlerDatum d = kahler_datum_beltrami({FrameOneForm::left_invariant(1, 0, 0)});
  SplitMix64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const ChartPoint p = point(Chart::R4_CARTESIAN, shell(rng));
    check_hermitian(complex_structure(d, p));
    CHECK(kahler_form_residual(d, p) < 1e-5);
  }
}

TEST_CASE("Taub-NUT-like data and flat space are Kahler") {
  const KahlerDatum tn = kahler_datum_gh(taub_nut_like());
  const KahlerDatum flat = kahler_datum_gh(gh_datum(parse_expr("1"), {parse_expr("0"), parse_expr("0"), parse_expr("0")}));
  SplitMix64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const Vec4 x(rng.uniform(-1, 1), rng.uniform(0.2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    const ChartPoint p = point(Chart::R1xR3, x);
    check_hermitian(complex_structure(tn, p));
    CHECK(kahler_form_residual(tn, p) < 1e-5);
    CHECK(kahler_form_residual(flat, p) < 1e-8);
  }
}

TEST_CASE("perturbed Beltrami datum is not Kahler") {
  const KahlerDatum d = kahler_datum_beltrami(
      {FrameOneForm::from_exprs(parse_expr("1 + 0.5*(x1^2 + x4^2 - x2^2 - x3^2)"), parse_expr("0"), parse_expr("0"))});
  SplitMix64 rng(43);
  int big = 0;
  for (int t = 0; t < 20; ++t) {
    const ChartPoint p = point(Chart::R4_CARTESIAN, shell(rng));
    check_hermitian(complex_structure(d, p));
    big += kahler_form_residual(d, p) > 1e-3;
  }
  CHECK(big >= 10);
}
