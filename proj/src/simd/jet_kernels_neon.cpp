// NEON Jet2 kernels (AArch64): each 4-wide row is processed as two
// float64x2 halves. vmulq/vaddq only, no fused multiply-add.

#include "sdgeom/jet_kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace sdgeom::simd {

#if defined(__aarch64__)
namespace {

inline float64x2_t ld(const double* p) { return vld1q_f64(p); }
inline void st(double* p, float64x2_t v) { vst1q_f64(p, v); }

void add(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value + b.value;
  for (int o = 0; o < 4; o += 2) st(r.grad.data() + o, vaddq_f64(ld(a.grad.data() + o), ld(b.grad.data() + o)));
  for (int o = 0; o < 16; o += 2) st(r.hess.data() + o, vaddq_f64(ld(a.hess.data() + o), ld(b.hess.data() + o)));
  out = r;
}

void sub(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value - b.value;
  for (int o = 0; o < 4; o += 2) st(r.grad.data() + o, vsubq_f64(ld(a.grad.data() + o), ld(b.grad.data() + o)));
  for (int o = 0; o < 16; o += 2) st(r.hess.data() + o, vsubq_f64(ld(a.hess.data() + o), ld(b.hess.data() + o)));
  out = r;
}

void mul(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value * b.value;
  const float64x2_t av = vdupq_n_f64(a.value);
  const float64x2_t bv = vdupq_n_f64(b.value);
  for (int o = 0; o < 4; o += 2) {
    st(r.grad.data() + o, vaddq_f64(vmulq_f64(av, ld(b.grad.data() + o)), vmulq_f64(bv, ld(a.grad.data() + o))));
  }
  for (int row = 0; row < 4; ++row) {
    const float64x2_t agi = vdupq_n_f64(a.grad[row]);
    const float64x2_t bgi = vdupq_n_f64(b.grad[row]);
    for (int c = 0; c < 4; c += 2) {
      const int o = row * 4 + c;
      const float64x2_t lin = vaddq_f64(vmulq_f64(av, ld(b.hess.data() + o)), vmulq_f64(bv, ld(a.hess.data() + o)));
      const float64x2_t cross =
          vaddq_f64(vmulq_f64(agi, ld(b.grad.data() + c)), vmulq_f64(bgi, ld(a.grad.data() + c)));
      st(r.hess.data() + o, vaddq_f64(lin, cross));
    }
  }
  out = r;
}

void div(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  const double q = a.value / b.value;
  r.value = q;
  const float64x2_t qv = vdupq_n_f64(q);
  const float64x2_t bv = vdupq_n_f64(b.value);
  for (int o = 0; o < 4; o += 2) {
    st(r.grad.data() + o, vdivq_f64(vsubq_f64(ld(a.grad.data() + o), vmulq_f64(qv, ld(b.grad.data() + o))), bv));
  }
  for (int row = 0; row < 4; ++row) {
    const float64x2_t rgi = vdupq_n_f64(r.grad[row]);
    const float64x2_t bgi = vdupq_n_f64(b.grad[row]);
    for (int c = 0; c < 4; c += 2) {
      const int o = row * 4 + c;
      const float64x2_t lin = vsubq_f64(ld(a.hess.data() + o), vmulq_f64(qv, ld(b.hess.data() + o)));
      const float64x2_t cross =
          vaddq_f64(vmulq_f64(rgi, ld(b.grad.data() + c)), vmulq_f64(bgi, ld(r.grad.data() + c)));
      st(r.hess.data() + o, vdivq_f64(vsubq_f64(lin, cross), bv));
    }
  }
  out = r;
}

void chain(const Jet2& a, double f0, double f1, double f2, Jet2& out) {
  Jet2 r;
  r.value = f0;
  const float64x2_t d1 = vdupq_n_f64(f1);
  const float64x2_t d2 = vdupq_n_f64(f2);
  for (int o = 0; o < 4; o += 2) st(r.grad.data() + o, vmulq_f64(d1, ld(a.grad.data() + o)));
  for (int row = 0; row < 4; ++row) {
    const float64x2_t agi = vdupq_n_f64(a.grad[row]);
    for (int c = 0; c < 4; c += 2) {
      const int o = row * 4 + c;
      st(r.hess.data() + o,
         vaddq_f64(vmulq_f64(d1, ld(a.hess.data() + o)), vmulq_f64(d2, vmulq_f64(agi, ld(a.grad.data() + c)))));
    }
  }
  out = r;
}

}  // namespace

const JetKernels* neon_kernels() {
  static const JetKernels k{"neon", &add, &sub, &mul, &div, &chain};
  return &k;
}

#else

const JetKernels* neon_kernels() { return nullptr; }

#endif

}  // namespace sdgeom::simd
