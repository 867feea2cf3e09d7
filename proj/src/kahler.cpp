#include "sdgeom/kahler.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace sdgeom {

namespace {

double inner(const Mat4& g, const Vec4& a, const Vec4& b) { return a.dot(g * b); }

Vec4 normalized(const Mat4& g, const Vec4& v) {
  const double n = std::sqrt(inner(g, v, v));
  if (!(n > 1e-12)) throw DomainError("degenerate spanning set for the foliation");
  return v / n;
}

}  // namespace

KahlerDatum kahler_datum_gh(const GHDatum& d) {
  KahlerDatum k;
  k.metric = gh_metric(d);
  k.spanning = [d](const ChartPoint& p) {
    const CoordJets c = seed_coordinates(p);
    std::array<Vec4, 4> s;
    s[0] = Vec4::Unit(0);
    std::array<Vec4, 3> lift;
    for (int i = 0; i < 3; ++i) {
      lift[static_cast<std::size_t>(i)] = Vec4::Unit(i + 1) - d.A[static_cast<std::size_t>(i)](c).value * Vec4::Unit(0);
    }
    s[1] = lift[2];
    s[2] = lift[0];
    s[3] = lift[1];
    return s;
  };
  return k;
}

KahlerDatum kahler_datum_beltrami(const BeltramiDatum& d) {
  KahlerDatum k;
  k.metric = beltrami_metric(d);
  k.spanning = [d](const ChartPoint& p) {
    const Vec4 x(p[0], p[1], p[2], p[3]);
    const double r2 = x.squaredNorm();
    if (!(r2 > 0.0)) throw DomainError("the Beltrami ansatz is singular at the origin");
    const Vec4 xh = x / std::sqrt(r2);
    const Vec4 v = x / r2;
    std::array<Vec4, 4> s;
    s[0] = v;
    std::array<Vec4, 3> lift;
    for (int j = 1; j <= 3; ++j) {
      const double aj = eval_ambient(d.A.coeff[static_cast<std::size_t>(j - 1)], xh).value;
      lift[static_cast<std::size_t>(j - 1)] = right_multiplication(Quaternion::unit(j)) * x - aj * v;
    }
    s[1] = lift[2];
    s[2] = lift[0];
    s[3] = lift[1];
    return s;
  };
  return k;
}

ComplexStructure complex_structure(const KahlerDatum& d, const ChartPoint& p) {
  ComplexStructure cs;
  cs.g = d.metric(p).value();
  const std::array<Vec4, 4> s = d.spanning(p);
  const Mat4& g = cs.g;
  // Gram-Schmidt in the order (V, W, W1, W2)
  std::array<Vec4, 4> e;
  for (std::size_t a = 0; a < 4; ++a) {
    Vec4 v = s[a];
    for (std::size_t b = 0; b < a; ++b) v -= inner(g, v, e[b]) * e[b];
    e[a] = normalized(g, v);
  }
  // J e0 = -e1, J e1 = e0 (rotation by -pi/2); J e2 = e3, J e3 = -e2
  Mat4 E, JE;
  for (int a = 0; a < 4; ++a) E.col(a) = e[static_cast<std::size_t>(a)];
  JE.col(0) = -e[1];
  JE.col(1) = e[0];
  JE.col(2) = e[3];
  JE.col(3) = -e[2];
  cs.J = JE * E.inverse();
  cs.omega = (cs.J).transpose() * g;  // omega_ab = g(J e_a, e_b) = (J^T g)_ab
  return cs;
}

double kahler_form_residual(const KahlerDatum& d, const ChartPoint& p, double h) {
  const int n = 4;
  std::array<Mat4, 4> domega;
  for (int k = 0; k < n; ++k) {
    ChartPoint pp = p, pm = p;
    pp.coords[static_cast<std::size_t>(k)] += h;
    pm.coords[static_cast<std::size_t>(k)] -= h;
    domega[static_cast<std::size_t>(k)] = (complex_structure(d, pp).omega - complex_structure(d, pm).omega) / (2.0 * h);
  }
  const Mat4 g = d.metric(p).value();
  Eigen::LLT<Mat4> llt(g);
  if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite");
  const Mat4 e = Mat4(llt.matrixL()).inverse().transpose();
  // (d omega)_kab = d_k omega_ab + d_a omega_bk + d_b omega_ka
  double t[4][4][4];
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        t[k][a][b] = domega[static_cast<std::size_t>(k)](a, b) + domega[static_cast<std::size_t>(a)](b, k) +
                     domega[static_cast<std::size_t>(b)](k, a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += t[k][a][b] * e(k, i) * e(a, j) * e(b, l);
        sum += s * s;
      }
  return std::sqrt(sum);
}

}  // namespace sdgeom
