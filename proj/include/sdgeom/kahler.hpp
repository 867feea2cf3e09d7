#pragma once

// Almost Hermitian structure built from a two-dimensional foliation F and
// its Kahler form. J rotates F by -pi/2 (F oriented by (V, W)) and F^perp by
// +pi/2 (oriented by the Gram-Schmidt images of (W1, W2)).

#include <array>
#include <functional>

#include "sdgeom/ansatz.hpp"
#include "sdgeom/curvature.hpp"

namespace sdgeom {

struct KahlerDatum {
  MetricField metric;
  /// Chart components of (V, W, W1, W2) at a point: V, W span F, and W1, W2
  /// complete them to a frame.
  std::function<std::array<Vec4, 4>(const ChartPoint&)> spanning;
};

/// F = span(d/dt, lift of d/dx3), lifts d/dx_k - A_k d/dt.
KahlerDatum kahler_datum_gh(const GHDatum& d);
/// F = span(x/rho^2, lift of X_3), lifts x e_j - A_j(x/rho) x/rho^2.
KahlerDatum kahler_datum_beltrami(const BeltramiDatum& d);

struct ComplexStructure {
  Mat4 J = Mat4::Zero();      // acts on chart components: (JX)^a = J(a, b) X^b
  Mat4 omega = Mat4::Zero();  // omega_ab = g(J e_a, e_b)
  Mat4 g = Mat4::Identity();
};

/// Throws DomainError if the spanning set degenerates (|V|_g < 1e-12).
ComplexStructure complex_structure(const KahlerDatum& d, const ChartPoint& p);

/// |d omega|_g at p, with d omega from central differences of omega_ab.
double kahler_form_residual(const KahlerDatum& d, const ChartPoint& p, double h = 1e-4);

}  // namespace sdgeom
