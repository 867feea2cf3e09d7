#pragma once

// Levi-Civita curvature of a metric given entrywise as Jet2 fields.
//
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   R_ijkl  = g(R(d_i, d_j) d_l, d_k)      so a space form has
//   R_ijkl  = kappa (g_ik g_jl - g_il g_jk)
//   Ric_jl  = g^ik R_ijkl,  S = g^jl Ric_jl
//
// Norms are taken in a g-orthonormal frame (the Cholesky frame, which has
// the chart orientation).

#include <array>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "sdgeom/chart.hpp"
#include "sdgeom/jet.hpp"

namespace sdgeom {

using Mat4 = Eigen::Matrix4d;
using Tensor4 = std::array<double, 256>;  // [i][j][k][l], stride 64/16/4/1

inline std::size_t t4(int i, int j, int k, int l) {
  return static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l);
}

/// Metric entries at a point, each a jet in the chart coordinates.
struct MetricJets {
  int dim = 4;
  std::array<std::array<Jet2, 4>, 4> g{};

  Mat4 value() const;
};

struct MetricField {
  int dim = 4;
  Chart chart = Chart::R4_CARTESIAN;
  std::function<MetricJets(const ChartPoint&)> eval;
  /// +1 if the coordinate frame is positively oriented for the geometry.
  int orientation = 1;
  std::string name;

  MetricJets operator()(const ChartPoint& p) const { return eval(p); }
};

/// Gamma[k][i][j] and its coordinate derivatives dGamma[m][k][i][j].
struct Christoffel {
  int dim = 4;
  std::array<double, 64> gamma{};
  std::array<double, 256> dgamma{};

  double operator()(int k, int i, int j) const { return gamma[static_cast<std::size_t>((k * 4 + i) * 4 + j)]; }
  double& at(int k, int i, int j) { return gamma[static_cast<std::size_t>((k * 4 + i) * 4 + j)]; }
  double d(int m, int k, int i, int j) const { return dgamma[t4(m, k, i, j)]; }
  double& d_at(int m, int k, int i, int j) { return dgamma[t4(m, k, i, j)]; }
};

/// Throws DomainError if g is not positive definite at p.
Christoffel christoffel(const MetricJets& g);
Christoffel christoffel(const MetricField& g, const ChartPoint& p);

struct CurvatureBundle {
  int dim = 4;
  Mat4 g = Mat4::Identity();
  Mat4 ginv = Mat4::Identity();
  /// Columns are a g-orthonormal frame with the chart orientation.
  Mat4 frame = Mat4::Identity();
  Christoffel gamma;
  Tensor4 riemann{};
  Mat4 ricci = Mat4::Zero();
  double scalar = 0.0;
  Tensor4 weyl{};  // dim 4 only
  double weyl_plus = 0.0;
  double weyl_minus = 0.0;

  double R(int i, int j, int k, int l) const { return riemann[t4(i, j, k, l)]; }
  double W(int i, int j, int k, int l) const { return weyl[t4(i, j, k, l)]; }

  /// Frobenius norms in the orthonormal frame.
  double riemann_norm() const;
  double ricci_norm() const;
  double weyl_norm() const;
  /// min(|W+|, |W-|) and which half attains it (+1 or -1).
  double weyl_half_min() const;
  int vanishing_half() const;
};

/// Curvature from metric values and precomputed Christoffel symbols with
/// derivatives (lets tests feed finite-difference dGamma).
CurvatureBundle curvature_from(const Mat4& g, int dim, const Christoffel& gamma, int orientation = 1);

CurvatureBundle curvature_bundle(const MetricField& g, const ChartPoint& p);

/// Norm of a symmetric 2-tensor (lower indices) in the g-orthonormal frame.
double tensor2_norm(const CurvatureBundle& b, const Mat4& t);
/// Norm of a 4-tensor (lower indices) in the g-orthonormal frame.
double tensor4_norm(const CurvatureBundle& b, const Tensor4& t);

/// Kulkarni-Nomizu product (h o k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il.
Tensor4 kulkarni_nomizu(const Mat4& h, const Mat4& k, int dim);

/// |Ric - (S/4) g| / |g|, both norms in the orthonormal frame (|g| = 2).
double einstein_residual(const CurvatureBundle& b);

/// |R_ijkl - kappa (g_ik g_jl - g_il g_jk)| in the orthonormal frame.
double constant_curvature_residual(const CurvatureBundle& b, double kappa);

/// |Ric - c g| in the orthonormal frame.
double ricci_einstein_deviation(const CurvatureBundle& b, double c);

/// Largest violation of the algebraic Riemann symmetries and first Bianchi,
/// relative to max(1, |R|).
double riemann_symmetry_defect(const CurvatureBundle& b);

/// |R - W - Ricci part - scalar part| relative to max(1, |R|) (dim 4).
double weyl_decomposition_defect(const CurvatureBundle& b);

/// Max |W^i_jil| trace, relative to max(1, |W|) (dim 4).
double weyl_trace_defect(const CurvatureBundle& b);

}  // namespace sdgeom
