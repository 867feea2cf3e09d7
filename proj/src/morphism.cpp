#include "sdgeom/morphism.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace sdgeom {

namespace {

struct PointJets {
  CoordJets c;
  Jet2 lambda;
  std::array<Jet2, 3> a;
};

PointJets point_jets(const MorphismDatum& m, const ChartPoint& p) {
  if (p.chart != m.base.product_chart()) throw std::invalid_argument("point is not on the datum's product chart");
  PointJets pj;
  pj.c = seed_coordinates(p);
  pj.lambda = m.lambda(pj.c);
  if (!(pj.lambda.value > 0.0)) throw DomainError("lambda must be positive");
  for (std::size_t i = 0; i < 3; ++i) pj.a[i] = m.a[i](pj.c);
  return pj;
}

Eigen::Matrix3d base_metric_value(const BaseGeometry& b, const CoordJets& c) {
  const auto h = b.metric(base_coords(c));
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value;
  return out;
}

/// h-orthonormal basis of H in the E-frame (columns), base orientation.
Eigen::Matrix3d h_orthonormal(const Eigen::Matrix3d& h) {
  Eigen::LLT<Eigen::Matrix3d> llt(h);
  if (llt.info() != Eigen::Success) throw DomainError("base metric is not positive definite");
  return Eigen::Matrix3d(llt.matrixL()).inverse().transpose();
}

Vec3 horizontal_derivative(const Jet2& f, const std::array<Jet2, 3>& a) {
  return {f.d(1) - a[0].value * f.d(0), f.d(2) - a[1].value * f.d(0), f.d(3) - a[2].value * f.d(0)};
}

ChartPoint base_point(const MorphismDatum& m, const ChartPoint& p) {
  ChartPoint b;
  b.chart = m.base.base_chart();
  b.radius = m.base.radius;
  b.coords = {p[1], p[2], p[3], 0.0};
  return b;
}

/// Ricci of g evaluated on the g-orthonormal frame (V/lambda, lambda e_a).
Mat4 ricci_in_vh_frame(const CurvatureBundle& b, const HorizontalData& hd) {
  const Eigen::Matrix3d eh = h_orthonormal(hd.h);
  Mat4 f = Mat4::Zero();
  f(0, 0) = 1.0 / hd.lambda;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) {
      // E_i = d_i - a_i d_t
      f(i + 1, a + 1) += hd.lambda * eh(i, a);
      f(0, a + 1) -= hd.lambda * eh(i, a) * hd.a[i];
    }
  return f.transpose() * b.ricci * f;
}

}  // namespace

HorizontalData horizontal_data(const MorphismDatum& m, const ChartPoint& p) {
  const PointJets pj = point_jets(m, p);
  HorizontalData hd;
  hd.h = base_metric_value(m.base, pj.c);
  hd.hinv = hd.h.inverse();
  hd.lambda = pj.lambda.value;
  for (int i = 0; i < 3; ++i) hd.a[i] = pj.a[static_cast<std::size_t>(i)].value;
  const Jet2 lm2 = 1.0 / (pj.lambda * pj.lambda);
  const Jet2 ll = log(pj.lambda);
  hd.dh_lambda_m2 = horizontal_derivative(lm2, pj.a);
  hd.dh_log_lambda = horizontal_derivative(ll, pj.a);
  hd.v_lambda_m2 = lm2.d(0);
  hd.v_lambda = pj.lambda.d(0);
  // d theta_{0k} = d_t a_k, d theta_{jk} = d_j a_k - d_k a_j
  for (int j = 0; j < 3; ++j) {
    hd.omega_vertical[j] = pj.a[static_cast<std::size_t>(j)].d(0);
    for (int k = 0; k < 3; ++k) {
      const Jet2& aj = pj.a[static_cast<std::size_t>(j)];
      const Jet2& ak = pj.a[static_cast<std::size_t>(k)];
      hd.omega(j, k) = ak.d(j + 1) - aj.d(k + 1) - aj.value * ak.d(0) + ak.value * aj.d(0);
    }
  }
  const Eigen::Matrix3d up = hd.hinv * hd.omega * hd.hinv.transpose();
  const double vol = std::sqrt(hd.h.determinant());
  for (int l = 0; l < 3; ++l) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s += levi_civita(j + 1, k + 1, l + 1) * up(j, k);
    hd.star_omega[l] = 0.5 * vol * s;
  }
  return hd;
}

double h_norm(const HorizontalData& hd, const Vec3& v) { return std::sqrt(std::max(0.0, v.dot(hd.hinv * v))); }

double omega_norm2(const HorizontalData& hd) {
  return (hd.omega.cwiseProduct(hd.hinv * hd.omega * hd.hinv.transpose())).sum();
}

double datum_defect(const MorphismDatum& m, const ChartPoint& p) {
  const HorizontalData hd = horizontal_data(m, p);
  // theta(V) = 1 and theta(E_i) = a_i - a_i hold by construction of the frame;
  // what a datum can get wrong is a t-dependent connection form.
  return hd.omega_vertical.cwiseAbs().maxCoeff();
}

UnifiedResult unified_residual(const MorphismDatum& m, const ChartPoint& p) {
  const HorizontalData hd = horizontal_data(m, p);
  const double plus = h_norm(hd, hd.dh_lambda_m2 - hd.star_omega);
  const double minus = h_norm(hd, hd.dh_lambda_m2 + hd.star_omega);
  UnifiedResult r;
  r.hodge_sign = plus <= minus ? 1 : -1;
  r.residual = std::min(plus, minus);
  r.residual_other = std::max(plus, minus);
  r.lhs_norm = h_norm(hd, hd.dh_lambda_m2);
  r.rhs_norm = h_norm(hd, hd.star_omega);
  return r;
}

double fundamental_derivative(const MorphismDatum& m, const ChartPoint& p) {
  return horizontal_data(m, p).v_lambda_m2;
}

double locconn_residual(const MorphismDatum& m, const BaseOneForm& A, double c, const ChartPoint& p) {
  if (c == 0.0) throw InapplicableError("local connection form relation needs c != 0 (c = 0 is the GH regime)");
  const PointJets pj = point_jets(m, p);
  const Jet2 lm2 = 1.0 / (pj.lambda * pj.lambda);
  // r = theta - (1/c) d(lambda^-2) - phi^* A in (dt, dy^i) components
  double r0 = 1.0 - lm2.d(0) / c;
  Vec3 ri;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    ri[i] = pj.a[k].value - lm2.d(i + 1) / c - A[k](pj.c).value;
  }
  const Eigen::Matrix3d h = base_metric_value(m.base, pj.c);
  Vec3 rh;
  for (int i = 0; i < 3; ++i) rh[i] = ri[i] - pj.a[static_cast<std::size_t>(i)].value * r0;
  return std::sqrt(r0 * r0 + rh.dot(h.inverse() * rh));
}

RicciIdentities ricci_identities_residual(const MorphismDatum& m, double c, const ChartPoint& p) {
  const HorizontalData hd = horizontal_data(m, p);
  const CurvatureBundle b = curvature_bundle(bryant_metric(m), p);
  const CurvatureBundle bn = curvature_bundle(base_metric(m.base), base_point(m, p));
  const Mat4 ric = ricci_in_vh_frame(b, hd);
  const Eigen::Matrix3d eh = h_orthonormal(hd.h);
  const Eigen::Matrix3d ricn = bn.ricci.topLeftCorner(3, 3);
  const Eigen::Matrix3d target = hd.lambda * hd.lambda * eh.transpose() * (ricn - 0.5 * c * c * hd.h) * eh;
  RicciIdentities r;
  r.vv = std::abs(ric(0, 0));
  r.vh = std::sqrt(2.0) * ric.block<1, 3>(0, 1).norm();
  r.hh = (ric.block<3, 3>(1, 1) - target).norm();
  return r;
}

RiccixyResult riccixy_residual(const MorphismDatum& m, const ChartPoint& p) {
  const HorizontalData hd = horizontal_data(m, p);
  const PointJets pj = point_jets(m, p);
  const MetricField g = bryant_metric(m);
  const CurvatureBundle b = curvature_bundle(g, p);
  const CurvatureBundle bn = curvature_bundle(base_metric(m.base), base_point(m, p));
  const Mat4 ric = ricci_in_vh_frame(b, hd);
  const Eigen::Matrix3d eh = h_orthonormal(hd.h);

  // div grad log(lambda) = g^{mn} (d_m d_n f - Gamma^k_mn d_k f)
  const Jet2 f = log(pj.lambda);
  double divgrad = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double s = f.dd(mu, nu);
      for (int k = 0; k < 4; ++k) s -= b.gamma(k, mu, nu) * f.d(k);
      divgrad += b.ginv(mu, nu) * s;
    }

  const double l = hd.lambda, l2 = l * l, l4 = l2 * l2;
  const Eigen::Matrix3d ricn = eh.transpose() * bn.ricci.topLeftCorner(3, 3) * eh;
  const Vec3 so = eh.transpose() * hd.star_omega;
  const Vec3 dl = eh.transpose() * hd.dh_log_lambda;
  auto residual_for = [&](double sign) {
    const double lap = sign * divgrad;
    Eigen::Matrix3d rhs = ricn - (lap / l2 + 0.25 * l4 * omega_norm2(hd)) * Eigen::Matrix3d::Identity() +
                          0.5 * l4 * so * so.transpose() - 2.0 * dl * dl.transpose();
    // on the g-orthonormal frame lambda e_a
    rhs *= l2;
    return (ric.block<3, 3>(1, 1) - rhs).norm();
  };
  const double geom = residual_for(-1.0);
  const double anal = residual_for(1.0);
  RiccixyResult r;
  r.laplacian_sign = geom <= anal ? -1 : 1;
  r.residual = std::min(geom, anal);
  r.residual_other = std::max(geom, anal);
  return r;
}

double base_ricci_residual(const MorphismDatum& m, double cM, const ChartPoint& p) {
  const HorizontalData hd = horizontal_data(m, p);
  const double scale = std::max(1.0, std::abs(hd.lambda));
  if (std::abs(hd.v_lambda) > 1e-10 * scale) throw InapplicableError("lambda is not basic (V(lambda) != 0)");
  if (hd.omega_vertical.cwiseAbs().maxCoeff() > 1e-10) throw InapplicableError("Omega is not basic");
  const PointJets pj = point_jets(m, p);
  const CurvatureBundle bn = curvature_bundle(base_metric(m.base), base_point(m, p));
  const Vec3 dl(pj.lambda.d(1), pj.lambda.d(2), pj.lambda.d(3));
  const double l = hd.lambda, l4 = l * l * l * l;
  const Eigen::Matrix3d rhs = 2.0 * cM / (l * l) * hd.h - 0.5 * l4 * hd.star_omega * hd.star_omega.transpose() +
                              2.0 / (l * l) * dl * dl.transpose();
  const Eigen::Matrix3d eh = h_orthonormal(hd.h);
  return (eh.transpose() * (bn.ricci.topLeftCorner(3, 3) - rhs) * eh).norm();
}

// ---------------------------------------------------------------------------

const char* construction_name(Construction c) {
  switch (c) {
    case Construction::GibbonsHawking: return "gibbons_hawking";
    case Construction::Warped: return "warped";
    case Construction::Beltrami: return "beltrami";
    case Construction::Ambiguous: return "ambiguous";
  }
  return "?";
}

Level level_of(double min_value, double max_value) {
  if (max_value < kZeroThreshold) return Level::Zero;
  if (min_value > kNonzeroThreshold) return Level::Nonzero;
  return Level::Ambiguous;
}

Classification classify(const MorphismDatum& m, const std::vector<ChartPoint>& samples) {
  if (samples.empty()) throw std::invalid_argument("classification needs samples");
  Classification k;
  std::vector<double> cs;
  double cmin = INFINITY, omin = INFINITY, dmin = INFINITY;
  double cmax = 0.0, omax = 0.0, dmax = 0.0;
  for (const ChartPoint& p : samples) {
    const HorizontalData hd = horizontal_data(m, p);
    const double c = hd.v_lambda_m2;
    const double om = std::sqrt(std::max(0.0, omega_norm2(hd)));
    const Vec3 dlam = hd.lambda * hd.dh_log_lambda;
    const double dl = h_norm(hd, dlam);
    cs.push_back(c);
    cmin = std::min(cmin, std::abs(c));
    cmax = std::max(cmax, std::abs(c));
    omin = std::min(omin, om);
    omax = std::max(omax, om);
    dmin = std::min(dmin, dl);
    dmax = std::max(dmax, dl);
  }
  double mean = 0.0;
  for (double c : cs) mean += c;
  mean /= static_cast<double>(cs.size());
  double spread = 0.0;
  for (double c : cs) spread = std::max(spread, std::abs(c - mean));

  k.c_level = level_of(cmin, cmax);
  k.omega_level = level_of(omin, omax);
  k.dlambda_level = level_of(dmin, dmax);
  k.c_mean = mean;
  k.c_spread = spread;
  k.c_constant = spread < kZeroThreshold * std::max(1.0, std::abs(mean));
  k.c_max = cmax;
  k.omega_min = omin;
  k.omega_max = omax;
  k.dlambda_min = dmin;
  k.dlambda_max = dmax;

  const bool gh = k.c_level == Level::Zero && k.omega_level == Level::Nonzero;
  const bool warped = k.omega_level == Level::Zero && k.dlambda_level == Level::Zero;
  const bool beltrami = k.c_level == Level::Nonzero && k.c_constant;
  const int fired = int(gh) + int(warped) + int(beltrami);
  if (fired == 1) {
    k.construction = gh ? Construction::GibbonsHawking : warped ? Construction::Warped : Construction::Beltrami;
  }
  return k;
}

}  // namespace sdgeom
