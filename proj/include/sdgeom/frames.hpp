#pragma once

// Left-invariant quaternionic frame on S^3(R), the Hopf fibration, and the
// exterior calculus of one- and two-forms written in that frame.
//
// Fields on S^3 are ambient functions of (x1..x4) restricted to the sphere.
// The frame vectors X_j(x) = x e_j / R extend to all of R^4, so X_j(f) is the
// ambient directional derivative and nested derivatives come from the
// ambient Hessian. Conventions:
//
//   [X_i, X_j] = (2/R) eps_ijk X_k        theta^1 ^ theta^2 ^ theta^3 > 0
//   two-form basis (theta^2^theta^3, theta^3^theta^1, theta^1^theta^2)
//   *theta^1 = theta^2 ^ theta^3 (cyclic),  ** = id

#include <array>
#include <functional>

#include <Eigen/Core>

#include "sdgeom/chart.hpp"
#include "sdgeom/expr.hpp"
#include "sdgeom/jet.hpp"
#include "sdgeom/quaternion.hpp"

namespace sdgeom {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

/// A scalar field on R^4 (restricted to S^3 where it matters). It receives
/// the ambient coordinates as jets, so it can be composed with maps such as
/// x -> x/|x| or a stereographic parametrization.
using AmbientField = std::function<Jet2(const CoordJets&)>;

AmbientField ambient_field(const Expr& e);
AmbientField constant_field(double c);

/// Ambient coordinate jets seeded at x (slot i carries x_{i+1}).
CoordJets seed_ambient(const Vec4& x);
/// f at x, with gradient and Hessian in the ambient coordinates.
Jet2 eval_ambient(const AmbientField& f, const Vec4& x);

/// Value and ambient gradient of a derived field such as X_j(f).
struct FieldJet1 {
  double value = 0.0;
  Vec4 grad = Vec4::Zero();
};

/// Tolerance for |q| = R, relative to R.
inline constexpr double kSphereTolerance = 1e-12;

class QuaternionFrame {
 public:
  explicit QuaternionFrame(double radius = 1.0);

  double radius() const { return radius_; }

  /// X_1, X_2, X_3 at a point of the sphere; throws std::invalid_argument
  /// off the sphere.
  std::array<Vec4, 3> at(const Vec4& q) const;

  /// Ambient extension x e_j / R (no sphere check), j in {1, 2, 3}.
  Vec4 vector(int j, const Vec4& x) const;

  /// Structure constant c^k_ij with [X_i, X_j] = c^k_ij X_k (indices 1..3).
  double structure_constant(int i, int j, int k) const;

  /// X_j applied to an ambient jet (directional derivative at x).
  double derivative(const Jet2& f, int j, const Vec4& x) const;

  /// X_j(f) for j = 1, 2, 3 as fields with ambient gradients.
  std::array<FieldJet1, 3> derivative_jets(const Jet2& f, const Vec4& x) const;

  void require_on_sphere(const Vec4& q) const;

 private:
  double radius_;
  std::array<Eigen::Matrix4d, 4> right_unit_;  // v -> v e_j
};

/// Levi-Civita symbol on {1, 2, 3}.
int levi_civita(int i, int j, int k);

/// Frame at an S3_AMBIENT chart point (radius taken from the point).
std::array<Vec4, 3> frame_at(const ChartPoint& q);

/// Hopf map S^3(1) -> S^2(1/2), q -> q k conj(q) / 2; fibres are the orbits
/// of the X_3 flow q -> q exp(t k).
struct HopfImage {
  Vec3 ambient;        // on the sphere of radius 1/2
  ChartPoint stereo;   // S2_STEREO chart, projection from the south pole
};
HopfImage hopf_projection(const ChartPoint& q);
Vec3 hopf_map(const Vec4& x);

/// A = A_j theta^j on S^3(R).
struct FrameOneForm {
  double radius = 1.0;
  std::array<AmbientField, 3> coeff;

  static FrameOneForm left_invariant(double a1, double a2, double a3, double radius = 1.0);
  static FrameOneForm from_exprs(const Expr& a1, const Expr& a2, const Expr& a3, double radius = 1.0);
  static FrameOneForm zero(double radius = 1.0) { return left_invariant(0, 0, 0, radius); }
};

/// Pointwise values of a one-form: coefficients on theta^1..theta^3.
struct OneFormValue {
  Vec3 a = Vec3::Zero();
};

/// Pointwise values of a two-form: coefficients on
/// (theta^2^theta^3, theta^3^theta^1, theta^1^theta^2).
struct TwoFormValue {
  Vec3 b = Vec3::Zero();
};

using FrameTwoForm = TwoFormValue;

OneFormValue evaluate(const FrameOneForm& A, const Vec4& q);

/// Coefficient jets of A (value and ambient gradient).
std::array<FieldJet1, 3> coefficient_jets(const FrameOneForm& A, const Vec4& q);

/// dA from coefficient jets: dA(X_i, X_j) = X_i A_j - X_j A_i - A([X_i, X_j]).
TwoFormValue d_frame(const std::array<FieldJet1, 3>& A, const QuaternionFrame& frame, const Vec4& q);
TwoFormValue d_frame(const FrameOneForm& A, const Vec4& q);

/// Exterior derivative of a function, df = X_j(f) theta^j.
OneFormValue d_scalar(const AmbientField& f, double radius, const Vec4& q);

/// The exact one-form df with coefficient jets, so that d(df) can be taken.
std::array<FieldJet1, 3> exact_form_jets(const AmbientField& f, double radius, const Vec4& q);

TwoFormValue hodge3(const OneFormValue& a);
OneFormValue hodge3(const TwoFormValue& b);

/// dA + c *A; vanishes iff A solves the Beltrami fields equation.
TwoFormValue beltrami_residual(const FrameOneForm& A, double c, const Vec4& q);

/// *d*A = X_1 A_1 + X_2 A_2 + X_3 A_3 (= -d^*A); zero iff A is coclosed.
double coclosed_residual(const FrameOneForm& A, const Vec4& q);
double coclosed_residual(const std::array<FieldJet1, 3>& A, const QuaternionFrame& frame, const Vec4& q);

/// Coefficient jets of *dA (needs second derivatives of A).
std::array<FieldJet1, 3> star_d_jets(const FrameOneForm& A, const Vec4& q);

// ---------------------------------------------------------------------------
// Flat R^3 (Euclidean metric, dx1^dx2^dx3 positive).

/// du - *dA = grad u - curl A at a point of R^3; zero iff the monopole
/// equation du = *dA holds. u and A use the symbols x1, x2, x3.
Vec3 monopole_residual(const Expr& u, const std::array<Expr, 3>& A, const Vec3& x);

}  // namespace sdgeom
