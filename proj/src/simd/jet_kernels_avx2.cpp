// AVX2 Jet2 kernels. The gradient is one 256-bit lane group and the Hessian
// is four rows of four doubles. No FMA: each lane performs the same
// multiply/add sequence as the scalar reference.

#include "sdgeom/jet_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SDGEOM_HAVE_AVX2_TU 1
#include <immintrin.h>
#endif

namespace sdgeom::simd {

#if SDGEOM_HAVE_AVX2_TU
namespace {

#define SDGEOM_AVX2 __attribute__((target("avx2")))

SDGEOM_AVX2 inline __m256d load(const double* p) { return _mm256_loadu_pd(p); }
SDGEOM_AVX2 inline void store(double* p, __m256d v) { _mm256_storeu_pd(p, v); }

SDGEOM_AVX2 void add(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value + b.value;
  store(r.grad.data(), _mm256_add_pd(load(a.grad.data()), load(b.grad.data())));
  for (int row = 0; row < 4; ++row) {
    const int o = row * 4;
    store(r.hess.data() + o,
          _mm256_add_pd(load(a.hess.data() + o), load(b.hess.data() + o)));
  }
  out = r;
}

SDGEOM_AVX2 void sub(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value - b.value;
  store(r.grad.data(), _mm256_sub_pd(load(a.grad.data()), load(b.grad.data())));
  for (int row = 0; row < 4; ++row) {
    const int o = row * 4;
    store(r.hess.data() + o,
          _mm256_sub_pd(load(a.hess.data() + o), load(b.hess.data() + o)));
  }
  out = r;
}

SDGEOM_AVX2 void mul(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value * b.value;
  const __m256d av = _mm256_set1_pd(a.value);
  const __m256d bv = _mm256_set1_pd(b.value);
  const __m256d ag = load(a.grad.data());
  const __m256d bg = load(b.grad.data());
  store(r.grad.data(), _mm256_add_pd(_mm256_mul_pd(av, bg), _mm256_mul_pd(bv, ag)));
  for (int row = 0; row < 4; ++row) {
    const int o = row * 4;
    const __m256d agi = _mm256_set1_pd(a.grad[row]);
    const __m256d bgi = _mm256_set1_pd(b.grad[row]);
    const __m256d lin = _mm256_add_pd(_mm256_mul_pd(av, load(b.hess.data() + o)),
                                      _mm256_mul_pd(bv, load(a.hess.data() + o)));
    const __m256d cross = _mm256_add_pd(_mm256_mul_pd(agi, bg), _mm256_mul_pd(bgi, ag));
    store(r.hess.data() + o, _mm256_add_pd(lin, cross));
  }
  out = r;
}

SDGEOM_AVX2 void div(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  const double q = a.value / b.value;
  r.value = q;
  const __m256d qv = _mm256_set1_pd(q);
  const __m256d bv = _mm256_set1_pd(b.value);
  const __m256d bg = load(b.grad.data());
  const __m256d rg =
      _mm256_div_pd(_mm256_sub_pd(load(a.grad.data()), _mm256_mul_pd(qv, bg)), bv);
  store(r.grad.data(), rg);
  for (int row = 0; row < 4; ++row) {
    const int o = row * 4;
    const __m256d rgi = _mm256_set1_pd(r.grad[row]);
    const __m256d bgi = _mm256_set1_pd(b.grad[row]);
    const __m256d lin = _mm256_sub_pd(load(a.hess.data() + o),
                                      _mm256_mul_pd(qv, load(b.hess.data() + o)));
    const __m256d cross = _mm256_add_pd(_mm256_mul_pd(rgi, bg), _mm256_mul_pd(bgi, rg));
    store(r.hess.data() + o, _mm256_div_pd(_mm256_sub_pd(lin, cross), bv));
  }
  out = r;
}

SDGEOM_AVX2 void chain(const Jet2& a, double f0, double f1, double f2, Jet2& out) {
  Jet2 r;
  r.value = f0;
  const __m256d d1 = _mm256_set1_pd(f1);
  const __m256d d2 = _mm256_set1_pd(f2);
  const __m256d ag = load(a.grad.data());
  store(r.grad.data(), _mm256_mul_pd(d1, ag));
  for (int row = 0; row < 4; ++row) {
    const int o = row * 4;
    const __m256d agi = _mm256_set1_pd(a.grad[row]);
    store(r.hess.data() + o,
          _mm256_add_pd(_mm256_mul_pd(d1, load(a.hess.data() + o)),
                        _mm256_mul_pd(d2, _mm256_mul_pd(agi, ag))));
  }
  out = r;
}

#undef SDGEOM_AVX2

}  // namespace

const JetKernels* avx2_kernels() {
  static const JetKernels k{"avx2", &add, &sub, &mul, &div, &chain};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &k : nullptr;
}

#else

const JetKernels* avx2_kernels() { return nullptr; }

#endif

}  // namespace sdgeom::simd
