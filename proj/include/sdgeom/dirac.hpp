#pragma once

// Quaternion-valued functions on the unit sphere S^3 and the first-order
// operator
//
//        |  0   -X1  -X2  -X3 |
//   D =  |  X1   0   -X3   X2 |
//        |  X2   X3   0   -X1 |
//        |  X3  -X2   X1   0  |
//
// acting on f = f0 + f1 i + f2 j + f3 k, with Delta = -(X1 X1 + X2 X2 + X3 X3).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sdgeom/expr.hpp"
#include "sdgeom/frames.hpp"
#include "sdgeom/random.hpp"

namespace sdgeom {

struct QuaternionField {
  std::array<AmbientField, 4> f;

  static QuaternionField from_exprs(const std::array<Expr, 4>& e);
  static QuaternionField constant(double a, double b, double c, double d);
  /// Im f read as the one-form f_j theta^j on S^3(1).
  FrameOneForm imaginary_form() const;
};

/// Entry (row, col) of the operator matrix as a signed frame index
/// (+j for X_j, -j for -X_j, 0 for zero).
int dirac_entry(int row, int col);

/// Df at q, |q| = 1.
Vec4 dirac_apply(const QuaternionField& f, const Vec4& q);

/// Delta f = sign * (X1 X1 + X2 X2 + X3 X3) f with sign = -1 (the fixed
/// convention); sign = +1 is exposed for falsification only.
double laplacian_frame(const AmbientField& f, const Vec4& q, double radius = 1.0, int sign = -1);

struct DiracIdentity {
  double residual = 0.0;  // |D^2 f - Delta f - 2 D f|
  double flipped = 0.0;   // same with the opposite Laplacian sign
};

DiracIdentity dirac_identity_residual(const QuaternionField& f, const Vec4& q);

/// The same quantity assembled from exterior calculus:
/// (d^*(Im f), d(Re f) + (*d + 2)(Im f)) with d^* A = -(X1 A1 + X2 A2 + X3 A3).
Vec4 dirac_from_forms(const QuaternionField& f, const Vec4& q);

/// Thrown when an input violates a stated precondition; carries the measured
/// residual.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(const std::string& what, double residual)
      : std::invalid_argument(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// *dA at q as a one-form (needs first derivatives of A).
OneFormValue star_d(const FrameOneForm& A, const Vec4& q);
/// (*d)^2 A at q (needs second derivatives of A).
OneFormValue star_d_squared(const FrameOneForm& A, const Vec4& q);

/// B = (*d + c) A. Checks at every point of `checks` that A is coclosed
/// (< 1e-8) and that (*d)^2 A = c^2 A (< 1e-8); throws PreconditionError
/// otherwise. B's coefficients have exact values and first derivatives; their
/// second derivatives are central differences of the exact gradient.
FrameOneForm vector_wave_to_beltrami(const FrameOneForm& A, double c, const std::vector<Vec4>& checks);

/// a1 theta^1 + a2 theta^2 + a3 theta^3 on S^3(1).
FrameOneForm left_invariant_solutions(double a1, double a2, double a3);

/// Random cubic polynomial quaternion fields in x1..x4.
std::vector<QuaternionField> random_polynomial_fields(std::uint64_t seed, int count);
std::vector<std::array<Expr, 4>> random_polynomial_exprs(std::uint64_t seed, int count);

/// Uniform random point on S^3(R) from four normalized Gaussians.
Vec4 random_sphere_point(SplitMix64& rng, double radius = 1.0);

}  // namespace sdgeom
