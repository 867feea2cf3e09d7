#include "sdgeom/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdgeom {

namespace {

using Mat3J = std::array<std::array<Jet2, 3>, 3>;

void require_chart(const ChartPoint& p, Chart c) {
  if (p.chart != c) {
    throw std::invalid_argument("expected a " + std::string(chart_name(c)) + " point, got " +
                                std::string(chart_name(p.chart)));
  }
}

void require_positive(const Jet2& v, const char* what) {
  if (!(v.value > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

const std::array<Eigen::Matrix4d, 4>& right_units() {
  static const std::array<Eigen::Matrix4d, 4> m = {
      right_multiplication(Quaternion::unit(0)), right_multiplication(Quaternion::unit(1)),
      right_multiplication(Quaternion::unit(2)), right_multiplication(Quaternion::unit(3))};
  return m;
}

/// (v e_j) for a jet-valued quaternion v.
std::array<Jet2, 4> times_unit(const std::array<Jet2, 4>& v, int j) {
  const Eigen::Matrix4d& m = right_units()[static_cast<std::size_t>(j)];
  std::array<Jet2, 4> out;
  for (int a = 0; a < 4; ++a) {
    Jet2 s(0.0);
    for (int b = 0; b < 4; ++b) {
      const double c = m(a, b);
      if (c != 0.0) s += c * v[static_cast<std::size_t>(b)];
    }
    out[static_cast<std::size_t>(a)] = s;
  }
  return out;
}

template <typename F>
MetricField make_metric(Chart chart, std::string name, F&& build) {
  MetricField m;
  m.dim = chart_dimension(chart);
  m.chart = chart;
  m.name = std::move(name);
  m.eval = [chart, build = std::forward<F>(build)](const ChartPoint& p) {
    require_chart(p, chart);
    MetricJets mj;
    mj.dim = chart_dimension(chart);
    build(seed_coordinates(p), mj);
    return mj;
  };
  return m;
}

}  // namespace

FieldFn field_from_expr(const Expr& e, Chart chart) {
  require_chart_symbols(e, chart);
  return [e, chart](const CoordJets& c) { return eval_jet(e, bind_chart(chart, c)); };
}

FieldFn constant_fn(double c) {
  return [c](const CoordJets&) { return Jet2(c); };
}

BaseOneForm zero_one_form() { return {constant_fn(0.0), constant_fn(0.0), constant_fn(0.0)}; }

Chart BaseGeometry::product_chart() const {
  return kind == BaseKind::Flat ? Chart::R1xR3 : Chart::PRODUCT_RHO_STEREO;
}

Chart BaseGeometry::base_chart() const {
  return kind == BaseKind::Flat ? Chart::R3_CARTESIAN : Chart::S3_STEREO;
}

double BaseGeometry::sectional_curvature() const {
  return kind == BaseKind::Flat ? 0.0 : 1.0 / (radius * radius);
}

Mat3J BaseGeometry::metric(const std::array<Jet2, 3>& y) const {
  Mat3J h{};
  if (kind == BaseKind::Flat) {
    for (int i = 0; i < 3; ++i) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Jet2(1.0);
    return h;
  }
  const Jet2 s = 1.0 + y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  const Jet2 f = (4.0 * radius * radius) / (s * s);
  for (std::size_t i = 0; i < 3; ++i) h[i][i] = f;
  return h;
}

MetricField base_metric(const BaseGeometry& b) {
  return make_metric(b.base_chart(), b.kind == BaseKind::Flat ? "flat" : "round_sphere",
                     [b](const CoordJets& c, MetricJets& mj) {
                       const Mat3J h = b.metric({c[0], c[1], c[2]});
                       for (std::size_t i = 0; i < 3; ++i)
                         for (std::size_t j = 0; j < 3; ++j) mj.g[i][j] = h[i][j];
                     });
}

std::array<Jet2, 3> base_coords(const CoordJets& c) { return {c[1], c[2], c[3]}; }

std::array<Jet2, 4> stereo_to_ambient(const std::array<Jet2, 3>& y, double radius) {
  const Jet2 s = 1.0 + y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  return {radius * (2.0 - s) / s, (2.0 * radius) * y[0] / s, (2.0 * radius) * y[1] / s, (2.0 * radius) * y[2] / s};
}

Vec4 stereo_to_ambient(const Vec3& y, double radius) {
  const double s = 1.0 + y.squaredNorm();
  return Vec4((2.0 - s) / s, 2.0 * y[0] / s, 2.0 * y[1] / s, 2.0 * y[2] / s) * radius;
}

Vec3 ambient_to_stereo(const Vec4& q, double radius) {
  const double d = radius + q[0];
  if (!(d > 0.0)) throw DomainError("the south pole has no stereographic coordinate");
  return Vec3(q[1], q[2], q[3]) / d;
}

std::array<std::array<Jet2, 3>, 3> stereo_coframe(const std::array<Jet2, 3>& y, double radius) {
  const Jet2 s = 1.0 + y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  const Jet2 inv = 1.0 / s;
  const Jet2 inv2 = inv * inv;
  std::array<Jet2, 4> qh = {(2.0 - s) * inv, 2.0 * y[0] * inv, 2.0 * y[1] * inv, 2.0 * y[2] * inv};
  // dq[i][a] = d qhat_a / d y^i
  std::array<std::array<Jet2, 4>, 3> dq;
  for (std::size_t i = 0; i < 3; ++i) {
    dq[i][0] = -4.0 * y[i] * inv2;
    for (std::size_t k = 0; k < 3; ++k) {
      Jet2 v = -4.0 * y[k] * y[i] * inv2;
      if (i == k) v += 2.0 * inv;
      dq[i][k + 1] = v;
    }
  }
  std::array<std::array<Jet2, 3>, 3> th;
  for (int j = 1; j <= 3; ++j) {
    const std::array<Jet2, 4> qe = times_unit(qh, j);
    for (std::size_t i = 0; i < 3; ++i) {
      Jet2 s2(0.0);
      for (std::size_t a = 0; a < 4; ++a) s2 += qe[a] * dq[i][a];
      th[static_cast<std::size_t>(j - 1)][i] = radius * s2;
    }
  }
  return th;
}

BaseOneForm pullback_frame_form(const FrameOneForm& A) {
  BaseOneForm out;
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = [A, i](const CoordJets& c) {
      const std::array<Jet2, 3> y = base_coords(c);
      const std::array<Jet2, 4> q = stereo_to_ambient(y, A.radius);
      const auto th = stereo_coframe(y, A.radius);
      const CoordJets qj = {q[0], q[1], q[2], q[3]};
      Jet2 s(0.0);
      for (std::size_t j = 0; j < 3; ++j) s += A.coeff[j](qj) * th[j][i];
      return s;
    };
  }
  return out;
}

// ---------------------------------------------------------------------------

GHDatum gh_datum(const Expr& u, const std::array<Expr, 3>& A, std::string name) {
  return {field_from_expr(u, Chart::R1xR3),
          {field_from_expr(A[0], Chart::R1xR3), field_from_expr(A[1], Chart::R1xR3),
           field_from_expr(A[2], Chart::R1xR3)},
          std::move(name)};
}

Expr taub_nut_u() { return parse_expr("1 + 1/(2*sqrt(x1^2 + x2^2 + x3^2))"); }

std::array<Expr, 3> taub_nut_potential() {
  // A = (1/2)(cos(theta) - 1) dphi
  const std::string w = "(x3/sqrt(x1^2 + x2^2 + x3^2) - 1)/(2*(x1^2 + x2^2))";
  return {parse_expr("-x2*" + w), parse_expr("x1*" + w), parse_expr("0")};
}

GHDatum taub_nut_like() { return gh_datum(taub_nut_u(), taub_nut_potential(), "taub_nut_like"); }

MetricField gh_metric(const GHDatum& d) {
  return make_metric(Chart::R1xR3, d.name, [d](const CoordJets& c, MetricJets& mj) {
    const Jet2 u = d.u(c);
    require_positive(u, "u");
    const Jet2 iu = 1.0 / u;
    std::array<Jet2, 3> a;
    for (std::size_t i = 0; i < 3; ++i) a[i] = d.A[i](c);
    mj.g[0][0] = iu;
    for (std::size_t i = 0; i < 3; ++i) {
      mj.g[0][i + 1] = mj.g[i + 1][0] = a[i] * iu;
      for (std::size_t j = 0; j < 3; ++j) {
        Jet2 v = a[i] * a[j] * iu;
        if (i == j) v += u;
        mj.g[i + 1][j + 1] = v;
      }
    }
  });
}

// ---------------------------------------------------------------------------

std::array<Jet2, 4> beltrami_extension(const FrameOneForm& A, const CoordJets& x) {
  const Jet2 r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  if (!(r2.value > 0.0)) throw DomainError("the Beltrami ansatz is singular at the origin");
  const Jet2 rho = sqrt(r2);
  const CoordJets xh = {x[0] / rho, x[1] / rho, x[2] / rho, x[3] / rho};
  const std::array<Jet2, 4> xv = {x[0], x[1], x[2], x[3]};
  std::array<Jet2, 4> out{};
  for (int j = 1; j <= 3; ++j) {
    const Jet2 aj = A.coeff[static_cast<std::size_t>(j - 1)](xh) / r2;
    const std::array<Jet2, 4> xe = times_unit(xv, j);
    for (std::size_t a = 0; a < 4; ++a) out[a] += aj * xe[a];
  }
  return out;
}

MetricField beltrami_metric(const BeltramiDatum& d) {
  if (std::abs(d.A.radius - 1.0) > 1e-15) throw std::invalid_argument("the Beltrami ansatz uses S^3(1)");
  return make_metric(Chart::R4_CARTESIAN, d.name, [d](const CoordJets& x, MetricJets& mj) {
    const std::array<Jet2, 4> at = beltrami_extension(d.A, x);
    const Jet2 r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    const Jet2 ir2 = 1.0 / r2;
    std::array<Jet2, 4> w;
    for (std::size_t a = 0; a < 4; ++a) w[a] = x[a] + at[a];
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a; b < 4; ++b) {
        Jet2 v = (w[a] * w[b] - x[a] * x[b]) * ir2;
        if (a == b) v = v + 1.0;
        mj.g[a][b] = mj.g[b][a] = v;
      }
  });
}

// ---------------------------------------------------------------------------

MetricField warped_metric(const WarpedDatum& d) {
  if (d.n != 3) throw std::invalid_argument("only three-dimensional bases are supported");
  return make_metric(d.base.product_chart(), d.name, [d](const CoordJets& c, MetricJets& mj) {
    const Jet2 lam = d.lambda(c);
    require_positive(lam, "lambda");
    const Jet2 il2 = 1.0 / (lam * lam);
    const Mat3J h = d.base.metric(base_coords(c));
    mj.g[0][0] = Jet2(1.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) mj.g[i + 1][j + 1] = il2 * h[i][j];
  });
}

double warped_ode_residual(double cM, double cN, int n, double lambda, double dlambda) {
  const double l2 = lambda * lambda;
  return cM / n * l2 - cN / (n - 1) * l2 * l2 + dlambda * dlambda;
}

namespace {

struct WarpedRhs {
  double cM, cN;
  int n, branch;

  double radicand(double y) const { return cN / (n - 1) * y * y * y * y - cM / n * y * y; }
  double f(double y) const { return branch * std::sqrt(std::max(0.0, radicand(y))); }
  double f2(double y) const { return 2.0 * cN / (n - 1) * y * y * y - cM / n * y; }
  WarpedSolution::Node node(double t, double y) const { return {t, y, f(y), f2(y)}; }
};

double rk4(const WarpedRhs& r, double y, double h) {
  const double k1 = r.f(y);
  const double k2 = r.f(y + 0.5 * h * k1);
  const double k3 = r.f(y + 0.5 * h * k2);
  const double k4 = r.f(y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates from (t0, y0) towards t1; returns nodes from t0 onward and
/// whether the run was cut short.
std::pair<std::vector<WarpedSolution::Node>, bool> integrate(const WarpedRhs& r, double t0, double y0, double t1,
                                                             double tol, double floor) {
  std::vector<WarpedSolution::Node> nodes{r.node(t0, y0)};
  if (t1 == t0) return {nodes, false};
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0, y = y0;
  double h = dir * std::abs(t1 - t0) * 1e-3;
  for (int guard = 0; guard < 10000000; ++guard) {
    if (dir * (t + h - t1) > 0.0) h = t1 - t;
    const double big = rk4(r, y, h);
    const double half = rk4(r, rk4(r, y, 0.5 * h), 0.5 * h);
    const double err = std::abs(half - big) / 15.0;
    const double scale = tol * std::max(1.0, std::abs(half));
    if (err <= scale) {
      t += h;
      y = half + (half - big) / 15.0;
      if (!(y > floor && y < 1.0 / floor)) return {nodes, true};
      nodes.push_back(r.node(t, y));
      if (t == t1) return {nodes, false};
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 4.0;
    h *= std::clamp(grow, 0.1, 4.0);
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) return {nodes, true};
  }
  return {nodes, true};
}

}  // namespace

WarpedSolution::WarpedSolution(double cM, double cN, int n, int branch, std::vector<Node> nodes, bool truncated)
    : cM_(cM), cN_(cN), n_(n), branch_(branch), nodes_(std::move(nodes)), truncated_(truncated) {
  if (nodes_.empty()) throw std::invalid_argument("empty solution");
}

std::array<double, 3> WarpedSolution::operator()(double t) const {
  if (t < t_min() || t > t_max()) throw std::out_of_range("t outside the solved interval");
  if (nodes_.size() == 1) return {nodes_[0].y, nodes_[0].dy, nodes_[0].ddy};
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t, [](double v, const Node& nd) { return v < nd.t; });
  if (it == nodes_.end()) --it;
  if (it == nodes_.begin()) ++it;
  const Node& a = *(it - 1);
  const Node& b = *it;
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  // quintic Hermite in s on [0, 1]
  const double c0 = a.y, c1 = h * a.dy, c2 = 0.5 * h * h * a.ddy;
  const double r0 = b.y - c0 - c1 - c2;
  const double r1 = h * b.dy - c1 - 2.0 * c2;
  const double r2 = h * h * b.ddy - 2.0 * c2;
  const double c3 = 10.0 * r0 - 4.0 * r1 + 0.5 * r2;
  const double c4 = -15.0 * r0 + 7.0 * r1 - r2;
  const double c5 = 6.0 * r0 - 3.0 * r1 + 0.5 * r2;
  const double p = c0 + s * (c1 + s * (c2 + s * (c3 + s * (c4 + s * c5))));
  const double dp = c1 + s * (2.0 * c2 + s * (3.0 * c3 + s * (4.0 * c4 + s * 5.0 * c5)));
  const double ddp = 2.0 * c2 + s * (6.0 * c3 + s * (12.0 * c4 + s * 20.0 * c5));
  return {p, dp / h, ddp / (h * h)};
}

double WarpedSolution::residual(double t) const {
  const auto v = (*this)(t);
  return warped_ode_residual(cM_, cN_, n_, v[0], v[1]);
}

FieldFn WarpedSolution::as_field() const {
  return [self = *this](const CoordJets& c) {
    const auto v = self(c[0].value);
    return chain(c[0], v[0], v[1], v[2]);
  };
}

WarpedSolution warped_ode_solve(double cM, double cN, int n, double lambda0, double t0, double t_begin,
                                double t_end, int branch, double tol, double lambda_floor) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
  if (!(lambda0 > 0.0)) throw std::domain_error("lambda0 must be positive");
  if (!(t_begin <= t0 && t0 <= t_end)) throw std::invalid_argument("t0 must lie in the interval");
  const WarpedRhs r{cM, cN, n, branch};
  if (r.radicand(lambda0) < 0.0) {
    throw std::domain_error("negative radicand at lambda0: no real solution on this branch");
  }
  auto fwd = integrate(r, t0, lambda0, t_end, tol, lambda_floor);
  auto bwd = integrate(r, t0, lambda0, t_begin, tol, lambda_floor);
  std::vector<WarpedSolution::Node> nodes(bwd.first.rbegin(), bwd.first.rend());
  nodes.insert(nodes.end(), fwd.first.begin() + 1, fwd.first.end());
  return WarpedSolution(cM, cN, n, branch, std::move(nodes), fwd.second || bwd.second);
}

// ---------------------------------------------------------------------------

MetricField bryant_metric(const BryantDatum& d) {
  return make_metric(d.base.product_chart(), d.name, [d](const CoordJets& c, MetricJets& mj) {
    const Jet2 lam = d.lambda(c);
    require_positive(lam, "lambda");
    const Jet2 l2 = lam * lam;
    const Jet2 il2 = 1.0 / l2;
    const Mat3J h = d.base.metric(base_coords(c));
    std::array<Jet2, 3> a;
    for (std::size_t i = 0; i < 3; ++i) a[i] = d.a[i](c);
    mj.g[0][0] = l2;
    for (std::size_t i = 0; i < 3; ++i) {
      mj.g[0][i + 1] = mj.g[i + 1][0] = l2 * a[i];
      for (std::size_t j = 0; j < 3; ++j) mj.g[i + 1][j + 1] = il2 * h[i][j] + l2 * a[i] * a[j];
    }
  });
}

BryantDatum bryant_from_gh(const GHDatum& d) {
  FieldFn u = d.u;
  return {BaseGeometry::flat(),
          [u](const CoordJets& c) {
            const Jet2 v = u(c);
            require_positive(v, "u");
            return powr(v, -0.5);
          },
          d.A, d.name + "_bryant"};
}

BryantDatum bryant_from_beltrami(const FrameOneForm& A) {
  if (std::abs(A.radius - 1.0) > 1e-15) throw std::invalid_argument("the Beltrami ansatz uses S^3(1)");
  return {BaseGeometry::sphere(1.0),
          [](const CoordJets& c) {
            require_positive(c[0], "t");
            return powr(2.0 * c[0], -0.5);
          },
          pullback_frame_form(A), "beltrami_bryant"};
}

BryantDatum bryant_hyperbolic_warped() {
  return {BaseGeometry::flat(),
          [](const CoordJets& c) {
            require_positive(c[0], "t");
            return 1.0 / c[0];
          },
          zero_one_form(), "hyperbolic_warped"};
}

MetricField half_sd_metric(const HalfSDDatum& d) {
  return make_metric(d.base.product_chart(), d.name, [d](const CoordJets& c, MetricJets& mj) {
    const Jet2& rho = c[0];
    require_positive(rho, "rho");
    const Jet2 ir = 1.0 / rho;
    const Mat3J h = d.base.metric(base_coords(c));
    std::array<Jet2, 3> a;
    for (std::size_t i = 0; i < 3; ++i) a[i] = d.A[i](c);
    mj.g[0][0] = ir;
    for (std::size_t i = 0; i < 3; ++i) {
      mj.g[0][i + 1] = mj.g[i + 1][0] = a[i] * ir;
      for (std::size_t j = 0; j < 3; ++j) mj.g[i + 1][j + 1] = rho * h[i][j] + a[i] * a[j] * ir;
    }
  });
}

}  // namespace sdgeom
