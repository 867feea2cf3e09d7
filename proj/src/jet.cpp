#include "sdgeom/jet.hpp"

#include <cmath>

#include "sdgeom/jet_kernels.hpp"

namespace sdgeom {

namespace {
const simd::JetKernels& K() { return simd::active_kernels(); }
}  // namespace

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  K().add(a, b, r);
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r;
  K().sub(a, b, r);
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  K().mul(a, b, r);
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.value == 0.0) throw DomainError("division by zero");
  Jet2 r;
  K().div(a, b, r);
  return r;
}

Jet2 operator-(const Jet2& a) { return chain(a, -a.value, -1.0, 0.0); }

Jet2 operator+(const Jet2& a, double c) { return chain(a, a.value + c, 1.0, 0.0); }
Jet2 operator+(double c, const Jet2& a) { return chain(a, c + a.value, 1.0, 0.0); }
Jet2 operator-(const Jet2& a, double c) { return chain(a, a.value - c, 1.0, 0.0); }
Jet2 operator-(double c, const Jet2& a) { return chain(a, c - a.value, -1.0, 0.0); }
Jet2 operator*(const Jet2& a, double c) { return chain(a, a.value * c, c, 0.0); }
Jet2 operator*(double c, const Jet2& a) { return chain(a, c * a.value, c, 0.0); }

Jet2 operator/(const Jet2& a, double c) {
  if (c == 0.0) throw DomainError("division by zero");
  return a / Jet2(c);
}

Jet2 operator/(double c, const Jet2& a) { return Jet2(c) / a; }

Jet2 chain(const Jet2& a, double f0, double f1, double f2) {
  Jet2 r;
  K().chain(a, f0, f1, f2, r);
  return r;
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value);
  const double c = std::cos(a.value);
  return chain(a, s, c, -s);
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.value);
  const double c = std::cos(a.value);
  return chain(a, c, -s, -c);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value);
  return chain(a, e, e, e);
}

Jet2 log(const Jet2& a) {
  if (!(a.value > 0.0)) throw DomainError("log of non-positive value");
  const double inv = 1.0 / a.value;
  return chain(a, std::log(a.value), inv, -inv * inv);
}

Jet2 sqrt(const Jet2& a) {
  if (!(a.value > 0.0)) throw DomainError("sqrt of non-positive value");
  const double s = std::sqrt(a.value);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.value));
}

// Locally atan2(y, x) = atan(y/x) + const or const - atan(x/y); pick the
// better conditioned ratio and take the value from std::atan2.
Jet2 atan2(const Jet2& y, const Jet2& x) {
  if (x.value == 0.0 && y.value == 0.0) throw DomainError("atan2(0, 0)");
  const double angle = std::atan2(y.value, x.value);
  if (std::abs(x.value) >= std::abs(y.value)) {
    const Jet2 u = y / x;
    const double w = 1.0 / (1.0 + u.value * u.value);
    return chain(u, angle, w, -2.0 * u.value * w * w);
  }
  const Jet2 u = x / y;
  const double w = 1.0 / (1.0 + u.value * u.value);
  return chain(u, angle, -w, 2.0 * u.value * w * w);
}

Jet2 powi(const Jet2& a, int n) {
  if (n == 0) return Jet2(1.0);
  if (a.value == 0.0 && n < 0) throw DomainError("zero to a negative power");
  const double v = a.value;
  const double f0 = std::pow(v, n);
  const double f1 = n == 1 ? 1.0 : n * std::pow(v, n - 1);
  const double f2 = (n == 1) ? 0.0 : (n == 2 ? 2.0 : double(n) * (n - 1) * std::pow(v, n - 2));
  return chain(a, f0, f1, f2);
}

Jet2 powr(const Jet2& a, double p) {
  if (!(a.value > 0.0)) throw DomainError("real power of non-positive base");
  const double v = a.value;
  const double f0 = std::pow(v, p);
  return chain(a, f0, p * f0 / v, p * (p - 1.0) * f0 / (v * v));
}

}  // namespace sdgeom
