#include "sdgeom/curvature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace sdgeom {

namespace {

void require_dim(int dim) {
  if (dim < 2 || dim > 4) throw std::invalid_argument("metric dimension must be 2, 3 or 4");
}

Mat4 padded_inverse(const Mat4& g, int dim) {
  Eigen::MatrixXd sub = g.topLeftCorner(dim, dim);
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite");
  Mat4 inv = Mat4::Zero();
  inv.topLeftCorner(dim, dim) = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  return inv;
}

Mat4 orthonormal_frame(const Mat4& g, int dim) {
  Eigen::MatrixXd sub = g.topLeftCorner(dim, dim);
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite");
  Eigen::MatrixXd l = llt.matrixL();
  Mat4 e = Mat4::Zero();
  e.topLeftCorner(dim, dim) = l.inverse().transpose();
  return e;
}

Tensor4 to_frame(const Tensor4& t, const Mat4& e, int n) {
  Tensor4 a{}, b{};
  // contract one index at a time
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += t[t4(i, j, k, l)] * e(l, d);
          a[t4(i, j, k, d)] = s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int k = 0; k < n; ++k) s += a[t4(i, j, k, d)] * e(k, c);
          b[t4(i, j, c, d)] = s;
        }
  for (int i = 0; i < n; ++i)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int j = 0; j < n; ++j) s += b[t4(i, j, c, d)] * e(j, bb);
          a[t4(i, bb, c, d)] = s;
        }
  for (int aa = 0; aa < n; ++aa)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int i = 0; i < n; ++i) s += a[t4(i, bb, c, d)] * e(i, aa);
          b[t4(aa, bb, c, d)] = s;
        }
  return b;
}

double frobenius(const Tensor4& t, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += t[t4(i, j, k, l)] * t[t4(i, j, k, l)];
  return std::sqrt(s);
}

double max_abs(const Tensor4& t) {
  double m = 0.0;
  for (double v : t) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Mat4 MetricJets::value() const {
  Mat4 m = Mat4::Identity();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value;
  return m;
}

Christoffel christoffel(const MetricJets& mj) {
  const int n = mj.dim;
  require_dim(n);
  auto G = [&](int i, int j) -> const Jet2& { return mj.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  const Mat4 ginv = padded_inverse(mj.value(), n);

  // first-kind symbols and their derivatives: c[l][i][j] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  double c1[4][4][4] = {};
  double dc1[4][4][4][4] = {};  // [m][l][i][j]
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        c1[l][i][j] = 0.5 * (G(j, l).d(i) + G(i, l).d(j) - G(i, j).d(l));
        for (int m = 0; m < n; ++m)
          dc1[m][l][i][j] = 0.5 * (G(j, l).dd(i, m) + G(i, l).dd(j, m) - G(i, j).dd(l, m));
      }

  // d_m g^kl = -g^ka d_m g_ab g^bl
  double dginv[4][4][4] = {};  // [m][k][l]
  for (int m = 0; m < n; ++m) {
    Mat4 dg = Mat4::Zero();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dg(a, b) = G(a, b).d(m);
    const Mat4 r = -ginv * dg * ginv;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) dginv[m][k][l] = r(k, l);
  }

  Christoffel out;
  out.dim = n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * c1[l][i][j];
        out.at(k, i, j) = s;
        for (int m = 0; m < n; ++m) {
          double ds = 0.0;
          for (int l = 0; l < n; ++l) ds += dginv[m][k][l] * c1[l][i][j] + ginv(k, l) * dc1[m][l][i][j];
          out.d_at(m, k, i, j) = ds;
        }
      }
  return out;
}

Christoffel christoffel(const MetricField& g, const ChartPoint& p) { return christoffel(g(p)); }

Tensor4 kulkarni_nomizu(const Mat4& h, const Mat4& k, int n) {
  Tensor4 t{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          t[t4(i, j, a, b)] = h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) - h(j, a) * k(i, b);
  return t;
}

CurvatureBundle curvature_from(const Mat4& g, int n, const Christoffel& G, int orientation) {
  require_dim(n);
  CurvatureBundle b;
  b.dim = n;
  b.g = Mat4::Identity();
  b.g.topLeftCorner(n, n) = g.topLeftCorner(n, n);
  b.ginv = padded_inverse(b.g, n);
  b.frame = orthonormal_frame(b.g, n);
  b.gamma = G;

  // R^l_kij = d_i G^l_jk - d_j G^l_ik + G^m_jk G^l_im - G^m_ik G^l_jm
  double rup[4][4][4][4] = {};  // [l][k][i][j]
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = G.d(i, l, j, k) - G.d(j, l, i, k);
          for (int m = 0; m < n; ++m) s += G(m, j, k) * G(l, i, m) - G(m, i, k) * G(l, j, m);
          rup[l][k][i][j] = s;
        }
  // R_ijkl = g_km R^m_lij
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += b.g(k, m) * rup[m][l][i][j];
          b.riemann[t4(i, j, k, l)] = s;
        }
  b.ricci = Mat4::Zero();
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) s += b.ginv(i, k) * b.R(i, j, k, l);
      b.ricci(j, l) = s;
    }
  b.scalar = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) b.scalar += b.ginv(j, l) * b.ricci(j, l);

  if (n == 4) {
    const Mat4 gg = b.g;
    const Mat4 traceless = b.ricci - b.scalar / 4.0 * gg;
    const Tensor4 ric_part = kulkarni_nomizu(traceless, gg, 4);
    const Tensor4 scal_part = kulkarni_nomizu(gg, gg, 4);
    for (std::size_t q = 0; q < b.weyl.size(); ++q) {
      b.weyl[q] = b.riemann[q] - 0.5 * ric_part[q] - b.scalar / 24.0 * scal_part[q];
    }
    const Tensor4 wf = to_frame(b.weyl, b.frame, 4);
    static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};
    Eigen::Matrix<double, 6, 6> m;
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) m(p, q) = wf[t4(pairs[p][0], pairs[p][1], pairs[q][0], pairs[q][1])];
    Eigen::Matrix<double, 6, 3> sd = Eigen::Matrix<double, 6, 3>::Zero(), asd = sd;
    const double r = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < 3; ++k) {
      sd(k, k) = r;
      sd(k + 3, k) = r;
      asd(k, k) = r;
      asd(k + 3, k) = -r;
    }
    double wp = (sd.transpose() * m * sd).norm();
    double wm = (asd.transpose() * m * asd).norm();
    if (orientation < 0) std::swap(wp, wm);
    b.weyl_plus = wp;
    b.weyl_minus = wm;
  }
  return b;
}

CurvatureBundle curvature_bundle(const MetricField& g, const ChartPoint& p) {
  const MetricJets mj = g(p);
  if (mj.dim != g.dim) throw std::logic_error("metric evaluator returned the wrong dimension");
  return curvature_from(mj.value(), mj.dim, christoffel(mj), g.orientation);
}

double tensor2_norm(const CurvatureBundle& b, const Mat4& t) {
  const int n = b.dim;
  const Mat4 f = b.frame.transpose() * t * b.frame;
  return f.topLeftCorner(n, n).norm();
}

double tensor4_norm(const CurvatureBundle& b, const Tensor4& t) {
  return frobenius(to_frame(t, b.frame, b.dim), b.dim);
}

double CurvatureBundle::riemann_norm() const { return tensor4_norm(*this, riemann); }
double CurvatureBundle::ricci_norm() const { return tensor2_norm(*this, ricci); }
double CurvatureBundle::weyl_norm() const { return dim == 4 ? tensor4_norm(*this, weyl) : 0.0; }
double CurvatureBundle::weyl_half_min() const { return std::min(weyl_plus, weyl_minus); }
int CurvatureBundle::vanishing_half() const { return weyl_plus <= weyl_minus ? 1 : -1; }

double einstein_residual(const CurvatureBundle& b) {
  const double n = b.dim;
  return tensor2_norm(b, b.ricci - b.scalar / n * b.g) / std::sqrt(n);
}

double constant_curvature_residual(const CurvatureBundle& b, double kappa) {
  Tensor4 t = b.riemann;
  const int n = b.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          t[t4(i, j, k, l)] -= kappa * (b.g(i, k) * b.g(j, l) - b.g(i, l) * b.g(j, k));
  return tensor4_norm(b, t);
}

double ricci_einstein_deviation(const CurvatureBundle& b, double c) {
  return tensor2_norm(b, b.ricci - c * b.g);
}

double riemann_symmetry_defect(const CurvatureBundle& b) {
  const int n = b.dim;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r = b.R(i, j, k, l);
          worst = std::max({worst, std::abs(r + b.R(j, i, k, l)), std::abs(r + b.R(i, j, l, k)),
                            std::abs(r - b.R(k, l, i, j)), std::abs(r + b.R(j, l, k, i) + b.R(l, i, k, j))});
        }
  return worst / std::max(1.0, max_abs(b.riemann));
}

double weyl_decomposition_defect(const CurvatureBundle& b) {
  if (b.dim != 4) return 0.0;
  // rebuild R from its pieces independently of curvature_from's formula
  const Mat4 e = b.ricci - b.scalar / 4.0 * b.g;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const double ric = 0.5 * (e(i, k) * b.g(j, l) + e(j, l) * b.g(i, k) - e(i, l) * b.g(j, k) - e(j, k) * b.g(i, l));
          const double sc = b.scalar / 12.0 * (b.g(i, k) * b.g(j, l) - b.g(i, l) * b.g(j, k));
          worst = std::max(worst, std::abs(b.R(i, j, k, l) - b.W(i, j, k, l) - ric - sc));
        }
  return worst / std::max(1.0, max_abs(b.riemann));
}

double weyl_trace_defect(const CurvatureBundle& b) {
  if (b.dim != 4) return 0.0;
  double worst = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) s += b.ginv(i, k) * b.W(i, j, k, l);
      worst = std::max(worst, std::abs(s));
    }
  return worst / std::max(1.0, max_abs(b.weyl));
}

}  // namespace sdgeom
