#pragma once

// Metric builders for the four-dimensional ansatze, the base geometries they
// sit over, and the warped-product ODE solver.
//
// Product charts put the fibre coordinate (t or rho) in slot 0 and the base
// coordinates in slots 1..3. A FieldFn receives the coordinate jets of its
// chart and returns a jet, so fields compose with coordinate changes.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "sdgeom/chart.hpp"
#include "sdgeom/curvature.hpp"
#include "sdgeom/expr.hpp"
#include "sdgeom/frames.hpp"
#include "sdgeom/jet.hpp"

namespace sdgeom {

using FieldFn = std::function<Jet2(const CoordJets&)>;
using BaseOneForm = std::array<FieldFn, 3>;  // components along dy^1..dy^3

FieldFn field_from_expr(const Expr& e, Chart chart);
FieldFn constant_fn(double c);
BaseOneForm zero_one_form();

// ---------------------------------------------------------------------------
// Base geometries.

enum class BaseKind { Flat, Sphere };

struct BaseGeometry {
  BaseKind kind = BaseKind::Flat;
  double radius = 1.0;  // Sphere only

  static BaseGeometry flat() { return {BaseKind::Flat, 1.0}; }
  static BaseGeometry sphere(double r) { return {BaseKind::Sphere, r}; }

  /// R1xR3 for the flat base, PRODUCT_RHO_STEREO for the sphere.
  Chart product_chart() const;
  /// R3_CARTESIAN or S3_STEREO.
  Chart base_chart() const;
  /// Sectional curvature (0 or 1/R^2).
  double sectional_curvature() const;

  /// h_ij at the base point carried by jets y[0..2].
  std::array<std::array<Jet2, 3>, 3> metric(const std::array<Jet2, 3>& y) const;
};

/// The base metric as a three-dimensional MetricField on base_chart().
MetricField base_metric(const BaseGeometry& b);

/// Base coordinate jets (slots 1..3) of a product-chart point.
std::array<Jet2, 3> base_coords(const CoordJets& c);

// Stereographic chart of S^3(R), projection from the south pole -R:
//   q(y) = R ((1 - |y|^2), 2 y) / (1 + |y|^2),   h = 4 R^2 / (1 + |y|^2)^2 dy^2
std::array<Jet2, 4> stereo_to_ambient(const std::array<Jet2, 3>& y, double radius);
Vec4 stereo_to_ambient(const Vec3& y, double radius);
Vec3 ambient_to_stereo(const Vec4& q, double radius);
/// theta^j(d/dy^i), indexed [j][i], for the quaternionic coframe of S^3(R).
std::array<std::array<Jet2, 3>, 3> stereo_coframe(const std::array<Jet2, 3>& y, double radius);

/// A = A_j theta^j on S^3(R) written in stereographic components, as fields
/// on a product chart (base slots 1..3).
BaseOneForm pullback_frame_form(const FrameOneForm& A);

// ---------------------------------------------------------------------------
// Gibbons-Hawking: g = u h + u^-1 (dt + A)^2 on R1xR3.

struct GHDatum {
  FieldFn u;
  BaseOneForm A;
  std::string name;
};

GHDatum gh_datum(const Expr& u, const std::array<Expr, 3>& A, std::string name = "gh");

/// u = 1 + 1/(2r) and the potential A = (x3/r - 1)(x1 dx2 - x2 dx1) / (2 (x1^2 + x2^2)),
/// smooth off the x3-axis; obtained by integrating the flux of *du through
/// polar caps.
Expr taub_nut_u();
std::array<Expr, 3> taub_nut_potential();
GHDatum taub_nut_like();

MetricField gh_metric(const GHDatum& d);

// ---------------------------------------------------------------------------
// Beltrami-fields ansatz: g = rho^2 h + rho^-2 (rho drho + A)^2 on R^4 \ {0},
// h the unit round metric pulled back along x -> x/|x|.

struct BeltramiDatum {
  FrameOneForm A;  // on S^3(1)
  std::string name = "beltrami";
};

/// Radially extended A as a covector on R^4: A_j(x/rho) <x e_j, .> / rho^2.
std::array<Jet2, 4> beltrami_extension(const FrameOneForm& A, const CoordJets& x);

MetricField beltrami_metric(const BeltramiDatum& d);

// ---------------------------------------------------------------------------
// Warped product: g = dt^2 + lambda(t)^-2 h.

struct WarpedDatum {
  FieldFn lambda;  // function of slot 0
  BaseGeometry base;
  double cN = 0.0;
  double cM = 0.0;
  int n = 3;
  std::string name = "warped";
};

MetricField warped_metric(const WarpedDatum& d);

/// Residual of (cM/n) lambda^2 - (cN/(n-1)) lambda^4 + lambda'^2 = 0.
double warped_ode_residual(double cM, double cN, int n, double lambda, double dlambda);

/// Dense solution of lambda' = branch * sqrt((cN/(n-1)) lambda^4 - (cM/n) lambda^2)
/// by adaptive RK4 (step doubling) with quintic Hermite interpolation.
class WarpedSolution {
 public:
  struct Node {
    double t, y, dy, ddy;
  };

  WarpedSolution(double cM, double cN, int n, int branch, std::vector<Node> nodes, bool truncated);

  double t_min() const { return nodes_.front().t; }
  double t_max() const { return nodes_.back().t; }
  bool truncated() const { return truncated_; }
  std::size_t steps() const { return nodes_.size() - 1; }

  /// lambda, lambda', lambda'' from the interpolant; throws outside [t_min, t_max].
  std::array<double, 3> operator()(double t) const;
  double residual(double t) const;
  /// lambda as a field on a product chart (slot 0).
  FieldFn as_field() const;

 private:
  double cM_, cN_;
  int n_, branch_;
  std::vector<Node> nodes_;
  bool truncated_;
};

/// Integrates from (t0, lambda0) over [t_begin, t_end] (t0 inside). branch is
/// +1 or -1. Throws std::domain_error if the radicand is negative at lambda0.
/// The interval is truncated if lambda leaves [lambda_floor, 1/lambda_floor].
WarpedSolution warped_ode_solve(double cM, double cN, int n, double lambda0, double t0, double t_begin,
                                double t_end, int branch, double tol = 1e-13, double lambda_floor = 1e-8);

// ---------------------------------------------------------------------------
// Bryant normal form: g = lambda^-2 h + lambda^2 theta^2, theta = dt + a_i dy^i
// (base dimension 3, so the vertical exponent 2n - 4 is 2).

struct BryantDatum {
  BaseGeometry base;
  FieldFn lambda;
  BaseOneForm a;
  std::string name = "bryant";
};

MetricField bryant_metric(const BryantDatum& d);

/// lambda = u^(-1/2), a = A over flat space.
BryantDatum bryant_from_gh(const GHDatum& d);
/// lambda = (2t)^(-1/2) over S^3(1), a = A in stereographic components.
BryantDatum bryant_from_beltrami(const FrameOneForm& A);
/// lambda = 1/t over flat space, a = 0 (hyperbolic space written in this form).
BryantDatum bryant_hyperbolic_warped();

// ---------------------------------------------------------------------------
// Half self-dual: g = rho h + rho^-1 (drho + A)^2 on (0, inf) x N.

struct HalfSDDatum {
  BaseGeometry base;
  BaseOneForm A;
  std::string name = "half_sd";
};

MetricField half_sd_metric(const HalfSDDatum& d);

}  // namespace sdgeom
