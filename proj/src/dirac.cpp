#include "sdgeom/dirac.hpp"

#include <cmath>

#include "sdgeom/corpus.hpp"

namespace sdgeom {

namespace {

constexpr int kMatrix[4][4] = {{0, -1, -2, -3}, {1, 0, -3, 2}, {2, 3, 0, -1}, {3, -2, 1, 0}};

Jet2 compose(double v, const Vec4& g, const Eigen::Matrix4d& h, const CoordJets& x) {
  Jet2 r(v);
  for (int k = 0; k < kMaxDim; ++k) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a) s += g[a] * x[static_cast<std::size_t>(a)].d(k);
    r.grad[static_cast<std::size_t>(k)] = s;
  }
  for (int k = 0; k < kMaxDim; ++k)
    for (int l = 0; l < kMaxDim; ++l) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a) {
        const Jet2& xa = x[static_cast<std::size_t>(a)];
        s += g[a] * xa.dd(k, l);
        for (int b = 0; b < 4; ++b) s += h(a, b) * xa.d(k) * x[static_cast<std::size_t>(b)].d(l);
      }
      r.dd(k, l) = s;
    }
  return r;
}

/// Jets of *dA (value and ambient gradient) at any ambient x.
std::array<FieldJet1, 3> star_d_jets_unchecked(const FrameOneForm& A, const Vec4& x) {
  const QuaternionFrame frame(A.radius);
  std::array<Jet2, 3> a;
  std::array<std::array<FieldJet1, 3>, 3> xa;
  for (std::size_t j = 0; j < 3; ++j) {
    a[j] = eval_ambient(A.coeff[j], x);
    xa[j] = frame.derivative_jets(a[j], x);
  }
  const double s = 2.0 / A.radius;
  std::array<FieldJet1, 3> out;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    out[k].value = xa[j][i].value - xa[i][j].value - s * a[k].value;
    out[k].grad = xa[j][i].grad - xa[i][j].grad - s * Vec4(a[k].d(0), a[k].d(1), a[k].d(2), a[k].d(3));
  }
  return out;
}

std::array<std::array<FieldJet1, 3>, 4> component_derivatives(const QuaternionField& f, const QuaternionFrame& fr,
                                                              const Vec4& q) {
  std::array<std::array<FieldJet1, 3>, 4> xf;
  for (std::size_t c = 0; c < 4; ++c) xf[c] = fr.derivative_jets(eval_ambient(f.f[c], q), q);
  return xf;
}

}  // namespace

QuaternionField QuaternionField::from_exprs(const std::array<Expr, 4>& e) {
  return {{ambient_field(e[0]), ambient_field(e[1]), ambient_field(e[2]), ambient_field(e[3])}};
}

QuaternionField QuaternionField::constant(double a, double b, double c, double d) {
  return {{constant_field(a), constant_field(b), constant_field(c), constant_field(d)}};
}

FrameOneForm QuaternionField::imaginary_form() const { return {1.0, {f[1], f[2], f[3]}}; }

int dirac_entry(int row, int col) { return kMatrix[row][col]; }

Vec4 dirac_apply(const QuaternionField& f, const Vec4& q) {
  const QuaternionFrame fr(1.0);
  fr.require_on_sphere(q);
  const auto xf = component_derivatives(f, fr, q);
  Vec4 out = Vec4::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const int e = kMatrix[r][c];
      if (e == 0) continue;
      const int j = std::abs(e);
      out[r] += (e > 0 ? 1.0 : -1.0) * xf[static_cast<std::size_t>(c)][static_cast<std::size_t>(j - 1)].value;
    }
  return out;
}

double laplacian_frame(const AmbientField& f, const Vec4& q, double radius, int sign) {
  const QuaternionFrame fr(radius);
  fr.require_on_sphere(q);
  const auto xf = fr.derivative_jets(eval_ambient(f, q), q);
  double s = 0.0;
  for (int j = 1; j <= 3; ++j) s += xf[static_cast<std::size_t>(j - 1)].grad.dot(fr.vector(j, q));
  return sign * s;
}

DiracIdentity dirac_identity_residual(const QuaternionField& f, const Vec4& q) {
  const QuaternionFrame fr(1.0);
  fr.require_on_sphere(q);
  const auto xf = component_derivatives(f, fr, q);
  std::array<Vec4, 4> xv;
  for (int j = 1; j <= 3; ++j) xv[static_cast<std::size_t>(j)] = fr.vector(j, q);

  // Df with ambient gradients
  std::array<FieldJet1, 4> df;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const int e = kMatrix[r][c];
      if (e == 0) continue;
      const double s = e > 0 ? 1.0 : -1.0;
      const FieldJet1& x = xf[static_cast<std::size_t>(c)][static_cast<std::size_t>(std::abs(e) - 1)];
      df[static_cast<std::size_t>(r)].value += s * x.value;
      df[static_cast<std::size_t>(r)].grad += s * x.grad;
    }
  Vec4 d2 = Vec4::Zero(), d1 = Vec4::Zero(), xx = Vec4::Zero();
  for (int r = 0; r < 4; ++r) {
    d1[r] = df[static_cast<std::size_t>(r)].value;
    for (int c = 0; c < 4; ++c) {
      const int e = kMatrix[r][c];
      if (e == 0) continue;
      const double s = e > 0 ? 1.0 : -1.0;
      d2[r] += s * df[static_cast<std::size_t>(c)].grad.dot(xv[static_cast<std::size_t>(std::abs(e))]);
    }
    for (int j = 1; j <= 3; ++j) {
      xx[r] += xf[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)].grad.dot(xv[static_cast<std::size_t>(j)]);
    }
  }
  const Vec4 lap = -xx;
  DiracIdentity out;
  out.residual = (d2 - lap - 2.0 * d1).norm();
  out.flipped = (d2 + lap - 2.0 * d1).norm();
  return out;
}

Vec4 dirac_from_forms(const QuaternionField& f, const Vec4& q) {
  const FrameOneForm im = f.imaginary_form();
  const double re = -coclosed_residual(im, q);
  const OneFormValue dre = d_scalar(f.f[0], 1.0, q);
  const OneFormValue sd = hodge3(d_frame(im, q));
  const OneFormValue a = evaluate(im, q);
  const Vec3 v = dre.a + sd.a + 2.0 * a.a;
  return {re, v[0], v[1], v[2]};
}

OneFormValue star_d(const FrameOneForm& A, const Vec4& q) { return hodge3(d_frame(A, q)); }

OneFormValue star_d_squared(const FrameOneForm& A, const Vec4& q) {
  const QuaternionFrame fr(A.radius);
  return hodge3(d_frame(star_d_jets(A, q), fr, q));
}

FrameOneForm vector_wave_to_beltrami(const FrameOneForm& A, double c, const std::vector<Vec4>& checks) {
  for (const Vec4& q : checks) {
    const double cc = std::abs(coclosed_residual(A, q));
    if (cc > 1e-8) throw PreconditionError("input one-form is not coclosed", cc);
    const double wave = (star_d_squared(A, q).a - c * c * evaluate(A, q).a).norm();
    if (wave > 1e-8) throw PreconditionError("input does not solve the vector wave equation", wave);
  }
  FrameOneForm B;
  B.radius = A.radius;
  for (std::size_t k = 0; k < 3; ++k) {
    B.coeff[k] = [A, c, k](const CoordJets& xj) {
      const Vec4 x(xj[0].value, xj[1].value, xj[2].value, xj[3].value);
      auto jet = [&](const Vec4& y) {
        const FieldJet1 s = star_d_jets_unchecked(A, y)[k];
        const Jet2 a = eval_ambient(A.coeff[k], y);
        return std::pair<double, Vec4>{s.value + c * a.value, s.grad + c * Vec4(a.d(0), a.d(1), a.d(2), a.d(3))};
      };
      const auto [v, g] = jet(x);
      const double h = 1e-5;
      Eigen::Matrix4d H;
      for (int m = 0; m < 4; ++m) {
        const Vec4 e = Vec4::Unit(m) * h;
        H.col(m) = (jet(x + e).second - jet(x - e).second) / (2.0 * h);
      }
      H = 0.5 * (H + H.transpose()).eval();
      return compose(v, g, H, xj);
    };
  }
  return B;
}

FrameOneForm left_invariant_solutions(double a1, double a2, double a3) {
  return FrameOneForm::left_invariant(a1, a2, a3, 1.0);
}

std::vector<std::array<Expr, 4>> random_polynomial_exprs(std::uint64_t seed, int count) {
  SplitMix64 rng(seed);
  const std::vector<Symbol> xs = {Symbol::X1, Symbol::X2, Symbol::X3, Symbol::X4};
  std::vector<std::array<Expr, 4>> out;
  for (int i = 0; i < count; ++i) {
    std::array<Expr, 4> e;
    for (auto& c : e) c = random_polynomial(rng, xs, 3, 5);
    out.push_back(e);
  }
  return out;
}

std::vector<QuaternionField> random_polynomial_fields(std::uint64_t seed, int count) {
  std::vector<QuaternionField> out;
  for (const auto& e : random_polynomial_exprs(seed, count)) out.push_back(QuaternionField::from_exprs(e));
  return out;
}

Vec4 random_sphere_point(SplitMix64& rng, double radius) {
  for (;;) {
    Vec4 g(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
    const double n = g.norm();
    if (n > 1e-8) return g / n * radius;
  }
}

}  // namespace sdgeom
