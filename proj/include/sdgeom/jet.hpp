#pragma once

// Second-order forward-mode jets over at most four chart coordinates.
//
// A Jet2 carries a value together with its gradient and (dense, symmetric)
// Hessian with respect to the chart coordinates. Charts of dimension < 4 use
// the leading slots and leave the rest at zero. All arithmetic is routed
// through the kernel table in jet_kernels.hpp so the scalar reference and the
// SIMD variants share one definition of every rule.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdgeom {

inline constexpr int kMaxDim = 4;

/// Raised when a function is evaluated at an analytic singularity
/// (log of a non-positive number, division by zero, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct alignas(32) Jet2 {
  std::array<double, kMaxDim> grad{};
  std::array<double, kMaxDim * kMaxDim> hess{};
  double value = 0.0;

  Jet2() = default;
  explicit Jet2(double v) : value(v) {}

  static Jet2 constant(double v) { return Jet2(v); }

  /// Coordinate function x_index seeded at v.
  static Jet2 variable(double v, int index) {
    Jet2 j(v);
    j.grad[static_cast<std::size_t>(index)] = 1.0;
    return j;
  }

  double d(int i) const { return grad[static_cast<std::size_t>(i)]; }
  double dd(int i, int j) const {
    return hess[static_cast<std::size_t>(i * kMaxDim + j)];
  }
  double& dd(int i, int j) { return hess[static_cast<std::size_t>(i * kMaxDim + j)]; }
};

namespace simd {
struct JetKernels;
const JetKernels& active_kernels();
}  // namespace simd

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);

Jet2 operator+(const Jet2& a, double c);
Jet2 operator+(double c, const Jet2& a);
Jet2 operator-(const Jet2& a, double c);
Jet2 operator-(double c, const Jet2& a);
Jet2 operator*(const Jet2& a, double c);
Jet2 operator*(double c, const Jet2& a);
Jet2 operator/(const Jet2& a, double c);
Jet2 operator/(double c, const Jet2& a);

inline Jet2& operator+=(Jet2& a, const Jet2& b) { return a = a + b; }
inline Jet2& operator-=(Jet2& a, const Jet2& b) { return a = a - b; }
inline Jet2& operator*=(Jet2& a, const Jet2& b) { return a = a * b; }

/// Applies a scalar function given its value and first two derivatives at
/// a.value (chain rule to second order).
Jet2 chain(const Jet2& a, double f0, double f1, double f2);

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 atan2(const Jet2& y, const Jet2& x);
/// Integer power; any base sign, zero base only for n >= 0.
Jet2 powi(const Jet2& a, int n);
/// Real power; requires a positive base.
Jet2 powr(const Jet2& a, double p);

}  // namespace sdgeom
