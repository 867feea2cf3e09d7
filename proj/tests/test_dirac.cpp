#include <doctest.h>

#include <cmath>

#include "sdgeom/dirac.hpp"
#include "sdgeom/random.hpp"

using namespace sdgeom;

namespace {

// Integral curve of X_j through q on the unit sphere: cos(s) q + sin(s) X_j(q).
Vec4 flow(int j, const Vec4& q, double s) {
  const Vec4 x = QuaternionFrame(1.0).vector(j, q);
  return std::cos(s) * q + std::sin(s) * x;
}

double value(const AmbientField& f, const Vec4& q) { return eval_ambient(f, q).value; }

double fd_x(const AmbientField& f, int j, const Vec4& q, double s = 1e-5) {
  return (value(f, flow(j, q, s)) - value(f, flow(j, q, -s))) / (2 * s);
}

double fd_xx(const AmbientField& f, int j, const Vec4& q, double s = 1e-4) {
  return (value(f, flow(j, q, s)) - 2 * value(f, q) + value(f, flow(j, q, -s))) / (s * s);
}

// The operator matrix, transcribed.
constexpr int kOp[4][4] = {{0, -1, -2, -3}, {1, 0, -3, 2}, {2, 3, 0, -1}, {3, -2, 1, 0}};

Vec4 fd_dirac(const QuaternionField& f, const Vec4& q) {
  Vec4 out = Vec4::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const int e = kOp[r][c];
      if (e != 0) out[r] += (e > 0 ? 1.0 : -1.0) * fd_x(f.f[static_cast<std::size_t>(c)], std::abs(e), q);
    }
  return out;
}

// Right-invariant one-form dual to q -> i q, written in the left-invariant coframe.
FrameOneForm right_invariant_i() {
  return FrameOneForm::from_exprs(parse_expr("x1^2 + x2^2 - x3^2 - x4^2"), parse_expr("2*(x2*x3 - x1*x4)"),
                                  parse_expr("2*(x1*x3 + x2*x4)"));
}

}  // namespace

TEST_CASE("operator matrix") {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      CHECK(dirac_entry(r, c) == kOp[r][c]);
      CHECK(dirac_entry(r, c) == -dirac_entry(c, r));
    }
}

TEST_CASE("D against finite differences along the frame") {
  SplitMix64 rng(51);
  const auto fields = random_polynomial_fields(5, 5);
  const QuaternionField x1 = QuaternionField::from_exprs({parse_expr("x1"), parse_expr("0"), parse_expr("0"), parse_expr("0")});
  for (int t = 0; t < 20; ++t) {
    const Vec4 q = random_sphere_point(rng);
    CHECK(dirac_apply(QuaternionField::constant(1, -2, 3, 0.5), q).norm() == 0.0);
    CHECK((dirac_apply(x1, q) - fd_dirac(x1, q)).norm() < 1e-8);
    for (const auto& f : fields) {
      const Vec4 d = dirac_apply(f, q);
      CHECK((d - fd_dirac(f, q)).norm() < 1e-7 * std::max(1.0, d.norm()));
      CHECK((d - dirac_from_forms(f, q)).norm() < 1e-12 * std::max(1.0, d.norm()));
    }
  }
}

TEST_CASE("Laplacian") {
  SplitMix64 rng(52);
  const AmbientField x1 = ambient_field(parse_expr("x1"));
  const AmbientField quad = ambient_field(parse_expr("x1*x2"));
  const AmbientField poly = ambient_field(parse_expr("x1^3 - x2*x3*x4 + 2*x4^2"));
  for (int t = 0; t < 20; ++t) {
    const Vec4 q = random_sphere_point(rng);
    // restrictions of harmonic polynomials of degree l have eigenvalue l(l + 2)
    CHECK(laplacian_frame(x1, q) == doctest::Approx(3.0 * q[0]).epsilon(1e-12).scale(1.0));
    CHECK(laplacian_frame(quad, q) == doctest::Approx(8.0 * q[0] * q[1]).epsilon(1e-12).scale(1.0));
    double fd = 0.0;
    for (int j = 1; j <= 3; ++j) fd -= fd_xx(poly, j, q);
    CHECK(std::abs(laplacian_frame(poly, q) - fd) < 1e-5);
    CHECK(laplacian_frame(poly, q, 1.0, +1) == doctest::Approx(-laplacian_frame(poly, q)));
  }
}

TEST_CASE("D^2 = Delta + 2D") {
  SplitMix64 rng(53);
  const auto fields = random_polynomial_fields(1, 10);
  for (int t = 0; t < 10; ++t) {
    const Vec4 q = random_sphere_point(rng);
    for (const auto& f : fields) {
      const DiracIdentity r = dirac_identity_residual(f, q);
      CHECK(r.residual < 1e-10);
      CHECK(r.flipped > 0.1);
    }
  }
}

TEST_CASE("left-invariant forms") {
  SplitMix64 rng(54);
  const FrameOneForm A = left_invariant_solutions(1, 2, -3);
  for (int t = 0; t < 10; ++t) {
    const Vec4 q = random_sphere_point(rng);
    CHECK(beltrami_residual(A, 2.0, q).b.norm() < 1e-12);
    CHECK((star_d(A, q).a + 2.0 * Vec3(1, 2, -3)).norm() < 1e-12);
    CHECK((star_d_squared(A, q).a - 4.0 * Vec3(1, 2, -3)).norm() < 1e-10);
  }
}

TEST_CASE("vector wave solutions give Beltrami fields") {
  SplitMix64 rng(55);
  std::vector<Vec4> checks;
  for (int t = 0; t < 10; ++t) checks.push_back(random_sphere_point(rng));

  const FrameOneForm R = right_invariant_i();
  for (const Vec4& q : checks) {
    CHECK(std::abs(coclosed_residual(R, q)) < 1e-12);
    CHECK((star_d(R, q).a - 2.0 * evaluate(R, q).a).norm() < 1e-12);
  }
  for (double c : {2.0, -2.0}) {
    for (const FrameOneForm& A : {R, left_invariant_solutions(1, 0.5, -0.25)}) {
      const FrameOneForm B = vector_wave_to_beltrami(A, c, checks);
      for (const Vec4& q : checks) {
        const Vec3 b = evaluate(B, q).a;
        CHECK((star_d(B, q).a - c * b).norm() < 1e-10);
      }
    }
    // (*d + 2) kills the left-invariant part and doubles the right-invariant one
  }
  const FrameOneForm Bp = vector_wave_to_beltrami(R, 2.0, checks);
  CHECK((evaluate(Bp, checks[0]).a - 4.0 * evaluate(R, checks[0]).a).norm() < 1e-12);

  CHECK_THROWS_AS(vector_wave_to_beltrami(left_invariant_solutions(1, 0, 0), 3.0, checks), PreconditionError);
  const FrameOneForm notcoclosed = FrameOneForm::from_exprs(parse_expr("x1"), parse_expr("0"), parse_expr("0"));
  CHECK_THROWS_AS(vector_wave_to_beltrami(notcoclosed, 2.0, checks), PreconditionError);
}

TEST_CASE("sphere sampling") {
  SplitMix64 a(7), b(7), c(8);
  for (int t = 0; t < 100; ++t) {
    const Vec4 p = random_sphere_point(a, 2.0);
    CHECK(std::abs(p.norm() - 2.0) < 1e-14);
    CHECK(p == random_sphere_point(b, 2.0));
  }
  CHECK(random_sphere_point(a) != random_sphere_point(c));
}
