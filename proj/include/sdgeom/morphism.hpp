#pragma once

// Residuals for a metric in Bryant normal form g = lambda^-2 h + lambda^2 theta^2
// seen as a horizontally conformal submersion onto the base (N, h):
//
//   V = d/dt,   E_i = d/dy^i - a_i d/dt,   theta = dt + a_i dy^i,   Omega = d theta
//
// The horizontal Hodge star *_H uses (H, phi^* h) with the base orientation
// times hodge_sign; (*Omega)_l = 1/2 sqrt(det h) eps_jkl Omega^jk.

#include <array>
#include <stdexcept>
#include <vector>

#include "sdgeom/ansatz.hpp"
#include "sdgeom/curvature.hpp"

namespace sdgeom {

using MorphismDatum = BryantDatum;

/// Raised when a check does not apply to the datum (c = 0 for the local
/// connection form, non-basic lambda for the base Ricci formula).
class InapplicableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pointwise horizontal data, all in the E-frame (base coordinate indices).
struct HorizontalData {
  Eigen::Matrix3d h = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d hinv = Eigen::Matrix3d::Identity();
  double lambda = 1.0;
  Vec3 a = Vec3::Zero();
  Vec3 dh_lambda_m2 = Vec3::Zero();  // E_i(lambda^-2)
  Vec3 dh_log_lambda = Vec3::Zero(); // E_i(log lambda)
  double v_lambda_m2 = 0.0;          // V(lambda^-2)
  double v_lambda = 0.0;             // V(lambda)
  Eigen::Matrix3d omega = Eigen::Matrix3d::Zero();  // Omega(E_i, E_j)
  Vec3 omega_vertical = Vec3::Zero();               // Omega(V, E_j)
  Vec3 star_omega = Vec3::Zero();                   // (*_H Omega)(E_l), base orientation
};

HorizontalData horizontal_data(const MorphismDatum& m, const ChartPoint& p);

/// |v|_h for a horizontal covector in the E-frame.
double h_norm(const HorizontalData& hd, const Vec3& v);
/// |Omega|^2_h as the full contraction Omega_ij Omega^ij.
double omega_norm2(const HorizontalData& hd);

/// max(|theta(V) - 1|, |theta(E_i)|, |Omega(V, .)|); zero for a valid datum.
double datum_defect(const MorphismDatum& m, const ChartPoint& p);

struct UnifiedResult {
  double residual = 0.0;      // min over the two hodge signs
  int hodge_sign = 1;         // sign attaining it
  double residual_other = 0.0;
  double lhs_norm = 0.0;      // |d_H(lambda^-2)|_h
  double rhs_norm = 0.0;      // |*_H Omega|_h
};

/// d_H(lambda^-2) - hodge_sign *_H Omega, h-norm.
UnifiedResult unified_residual(const MorphismDatum& m, const ChartPoint& p);

/// V(lambda^-2).
double fundamental_derivative(const MorphismDatum& m, const ChartPoint& p);

/// |theta - (1/c) d(lambda^-2) - phi^*(A)| measured as sqrt(r(V)^2 + |r(E)|_h^2).
/// Throws InapplicableError for c = 0.
double locconn_residual(const MorphismDatum& m, const BaseOneForm& A, double c, const ChartPoint& p);

struct RicciIdentities {
  double vv = 0.0, vh = 0.0, hh = 0.0;
  double max() const { return std::max({vv, vh, hh}); }
};

/// Ric^M on V (x) V, V (x) H and H (x) H against 0, 0 and
/// phi^*(Ric^N) - (c^2/2) phi^*(h), in a g-orthonormal V/E frame.
RicciIdentities ricci_identities_residual(const MorphismDatum& m, double c, const ChartPoint& p);

struct RiccixyResult {
  double residual = 0.0;       // min over the Laplacian sign
  int laplacian_sign = -1;     // -1: Delta = -div grad, +1: Delta = div grad
  double residual_other = 0.0;
};

/// Ric^M|HxH against phi^*Ric^N - lambda^-2 (Delta^M log lambda + lambda^6 |Omega|^2_h / 4) phi^*h
///   + lambda^4 (*Omega)(x)(*Omega) / 2 - 2 d_H log lambda (x) d_H log lambda.
RiccixyResult riccixy_residual(const MorphismDatum& m, const ChartPoint& p);

/// Ric^N against 2 c^M lambda^-2 h - lambda^4 (*Omega)(x)(*Omega) / 2 + 2 lambda^-2 dlambda (x) dlambda
/// on the base, h-orthonormal norm. Throws InapplicableError unless lambda and
/// Omega are basic at p.
double base_ricci_residual(const MorphismDatum& m, double cM, const ChartPoint& p);

// ---------------------------------------------------------------------------
// Case classification (GH / warped / Beltrami) over a sample set.

inline constexpr double kZeroThreshold = 1e-7;
inline constexpr double kNonzeroThreshold = 1e-3;

enum class Level { Zero, Nonzero, Ambiguous };
enum class Construction { GibbonsHawking, Warped, Beltrami, Ambiguous };

const char* construction_name(Construction c);

struct Classification {
  Construction construction = Construction::Ambiguous;
  Level c_level = Level::Ambiguous;        // V(lambda^-2)
  Level omega_level = Level::Ambiguous;    // Omega
  Level dlambda_level = Level::Ambiguous;  // d_H lambda
  bool c_constant = false;
  double c_mean = 0.0;
  double c_spread = 0.0;  // max |c - mean|
  double c_max = 0.0, omega_min = 0.0, omega_max = 0.0, dlambda_min = 0.0, dlambda_max = 0.0;
};

/// Level of a sampled nonnegative quantity: all < zero, all > nonzero, or in between.
Level level_of(double min_value, double max_value);

Classification classify(const MorphismDatum& m, const std::vector<ChartPoint>& samples);

}  // namespace sdgeom
