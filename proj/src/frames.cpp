#include "sdgeom/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace sdgeom {

namespace {

Vec4 grad4(const Jet2& f) { return {f.d(0), f.d(1), f.d(2), f.d(3)}; }

Eigen::Matrix4d hess4(const Jet2& f) {
  Eigen::Matrix4d h;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h(i, j) = f.dd(i, j);
  return h;
}

}  // namespace

CoordJets seed_ambient(const Vec4& x) {
  CoordJets c;
  for (int i = 0; i < 4; ++i) c[static_cast<std::size_t>(i)] = Jet2::variable(x[i], i);
  return c;
}

Jet2 eval_ambient(const AmbientField& f, const Vec4& x) { return f(seed_ambient(x)); }

AmbientField ambient_field(const Expr& e) {
  require_chart_symbols(e, Chart::S3_AMBIENT);
  return [e](const CoordJets& x) { return eval_jet(e, bind_chart(Chart::S3_AMBIENT, x)); };
}

AmbientField constant_field(double c) {
  return [c](const CoordJets&) { return Jet2(c); };
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (1,2,3)
  if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) || (i == 3 && j == 1 && k == 2)) return 1;
  return -1;
}

QuaternionFrame::QuaternionFrame(double radius) : radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("frame radius must be positive");
  for (int j = 0; j < 4; ++j) right_unit_[static_cast<std::size_t>(j)] = right_multiplication(Quaternion::unit(j));
}

void QuaternionFrame::require_on_sphere(const Vec4& q) const {
  if (std::abs(q.norm() - radius_) > kSphereTolerance * radius_) {
    throw std::invalid_argument("point is off the sphere of radius " + std::to_string(radius_));
  }
}

Vec4 QuaternionFrame::vector(int j, const Vec4& x) const {
  return right_unit_[static_cast<std::size_t>(j)] * x / radius_;
}

std::array<Vec4, 3> QuaternionFrame::at(const Vec4& q) const {
  require_on_sphere(q);
  return {vector(1, q), vector(2, q), vector(3, q)};
}

double QuaternionFrame::structure_constant(int i, int j, int k) const {
  return 2.0 / radius_ * levi_civita(i, j, k);
}

double QuaternionFrame::derivative(const Jet2& f, int j, const Vec4& x) const {
  return grad4(f).dot(vector(j, x));
}

std::array<FieldJet1, 3> QuaternionFrame::derivative_jets(const Jet2& f, const Vec4& x) const {
  // X_j f = <grad f, M_j x> / R, so grad(X_j f) = (H M_j x + M_j^T grad f) / R.
  const Vec4 g = grad4(f);
  const Eigen::Matrix4d h = hess4(f);
  std::array<FieldJet1, 3> out;
  for (int j = 1; j <= 3; ++j) {
    const Eigen::Matrix4d& m = right_unit_[static_cast<std::size_t>(j)];
    const Vec4 v = m * x / radius_;
    auto& o = out[static_cast<std::size_t>(j - 1)];
    o.value = g.dot(v);
    o.grad = h * v + m.transpose() * g / radius_;
  }
  return out;
}

std::array<Vec4, 3> frame_at(const ChartPoint& q) {
  if (q.chart != Chart::S3_AMBIENT) throw std::invalid_argument("frame_at needs an S3_AMBIENT point");
  const Vec4 x(q[0], q[1], q[2], q[3]);
  return QuaternionFrame(q.radius).at(x);
}

Vec3 hopf_map(const Vec4& x) {
  const Quaternion q = Quaternion::from_vector(x);
  const Quaternion p = 0.5 * (q * Quaternion::unit(3) * q.conj());
  return {p.x, p.y, p.z};
}

HopfImage hopf_projection(const ChartPoint& q) {
  if (q.chart != Chart::S3_AMBIENT) throw std::invalid_argument("hopf_projection needs an S3_AMBIENT point");
  const Vec4 x(q[0], q[1], q[2], q[3]);
  QuaternionFrame(1.0).require_on_sphere(x);
  HopfImage out;
  out.ambient = hopf_map(x);
  const double r = 0.5;
  const double denom = r + out.ambient[2];
  if (denom <= 0.0) throw DomainError("Hopf image is the south pole; no stereographic coordinate");
  out.stereo.chart = Chart::S2_STEREO;
  out.stereo.radius = r;
  out.stereo.coords = {r * out.ambient[0] / denom, r * out.ambient[1] / denom, 0.0, 0.0};
  return out;
}

FrameOneForm FrameOneForm::left_invariant(double a1, double a2, double a3, double radius) {
  return {radius, {constant_field(a1), constant_field(a2), constant_field(a3)}};
}

FrameOneForm FrameOneForm::from_exprs(const Expr& a1, const Expr& a2, const Expr& a3, double radius) {
  return {radius, {ambient_field(a1), ambient_field(a2), ambient_field(a3)}};
}

OneFormValue evaluate(const FrameOneForm& A, const Vec4& q) {
  OneFormValue v;
  for (int j = 0; j < 3; ++j) v.a[j] = eval_ambient(A.coeff[static_cast<std::size_t>(j)], q).value;
  return v;
}

std::array<FieldJet1, 3> coefficient_jets(const FrameOneForm& A, const Vec4& q) {
  std::array<FieldJet1, 3> out;
  for (std::size_t j = 0; j < 3; ++j) {
    const Jet2 f = eval_ambient(A.coeff[j], q);
    out[j].value = f.value;
    out[j].grad = grad4(f);
  }
  return out;
}

TwoFormValue d_frame(const std::array<FieldJet1, 3>& A, const QuaternionFrame& frame, const Vec4& q) {
  // X_i(A_j) = <grad A_j, X_i>
  double xa[3][3];
  for (int i = 0; i < 3; ++i) {
    const Vec4 xi = frame.vector(i + 1, q);
    for (int j = 0; j < 3; ++j) xa[i][j] = A[static_cast<std::size_t>(j)].grad.dot(xi);
  }
  const double s = 2.0 / frame.radius();
  TwoFormValue b;
  b.b[0] = xa[1][2] - xa[2][1] - s * A[0].value;
  b.b[1] = xa[2][0] - xa[0][2] - s * A[1].value;
  b.b[2] = xa[0][1] - xa[1][0] - s * A[2].value;
  return b;
}

TwoFormValue d_frame(const FrameOneForm& A, const Vec4& q) {
  const QuaternionFrame frame(A.radius);
  frame.require_on_sphere(q);
  return d_frame(coefficient_jets(A, q), frame, q);
}

OneFormValue d_scalar(const AmbientField& f, double radius, const Vec4& q) {
  const QuaternionFrame frame(radius);
  frame.require_on_sphere(q);
  const Jet2 j = eval_ambient(f, q);
  OneFormValue out;
  for (int k = 1; k <= 3; ++k) out.a[k - 1] = frame.derivative(j, k, q);
  return out;
}

std::array<FieldJet1, 3> exact_form_jets(const AmbientField& f, double radius, const Vec4& q) {
  const QuaternionFrame frame(radius);
  frame.require_on_sphere(q);
  return frame.derivative_jets(eval_ambient(f, q), q);
}

TwoFormValue hodge3(const OneFormValue& a) { return TwoFormValue{a.a}; }
OneFormValue hodge3(const TwoFormValue& b) { return OneFormValue{b.b}; }

TwoFormValue beltrami_residual(const FrameOneForm& A, double c, const Vec4& q) {
  TwoFormValue r = d_frame(A, q);
  r.b += c * hodge3(evaluate(A, q)).b;
  return r;
}

double coclosed_residual(const std::array<FieldJet1, 3>& A, const QuaternionFrame& frame, const Vec4& q) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) s += A[static_cast<std::size_t>(j)].grad.dot(frame.vector(j + 1, q));
  return s;
}

double coclosed_residual(const FrameOneForm& A, const Vec4& q) {
  const QuaternionFrame frame(A.radius);
  frame.require_on_sphere(q);
  return coclosed_residual(coefficient_jets(A, q), frame, q);
}

std::array<FieldJet1, 3> star_d_jets(const FrameOneForm& A, const Vec4& q) {
  const QuaternionFrame frame(A.radius);
  frame.require_on_sphere(q);
  std::array<Jet2, 3> a;
  std::array<std::array<FieldJet1, 3>, 3> xa;  // xa[j][i] = X_{i+1}(A_{j+1})
  for (std::size_t j = 0; j < 3; ++j) {
    a[j] = eval_ambient(A.coeff[j], q);
    xa[j] = frame.derivative_jets(a[j], q);
  }
  const double s = 2.0 / A.radius;
  std::array<FieldJet1, 3> out;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    // B_k = X_i A_j - X_j A_i - (2/R) A_k  (k, i, j cyclic)
    out[k].value = xa[j][i].value - xa[i][j].value - s * a[k].value;
    out[k].grad = xa[j][i].grad - xa[i][j].grad - s * grad4(a[k]);
  }
  return out;
}

Vec3 monopole_residual(const Expr& u, const std::array<Expr, 3>& A, const Vec3& x) {
  ChartPoint p;
  p.chart = Chart::R3_CARTESIAN;
  p.coords = {x[0], x[1], x[2], 0.0};
  const Jet2 ju = eval_jet2(u, p);
  std::array<Jet2, 3> ja;
  for (std::size_t i = 0; i < 3; ++i) ja[i] = eval_jet2(A[i], p);
  // *d(A_i dx^i) = curl A with dx1^dx2^dx3 positive.
  const Vec3 curl(ja[2].d(1) - ja[1].d(2), ja[0].d(2) - ja[2].d(0), ja[1].d(0) - ja[0].d(1));
  return Vec3(ju.d(0), ju.d(1), ju.d(2)) - curl;
}

}  // namespace sdgeom
