#include "sdgeom/jet_kernels.hpp"

namespace sdgeom::simd {
namespace {

constexpr int N = kMaxDim;

void add(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value + b.value;
  for (int i = 0; i < N; ++i) r.grad[i] = a.grad[i] + b.grad[i];
  for (int k = 0; k < N * N; ++k) r.hess[k] = a.hess[k] + b.hess[k];
  out = r;
}

void sub(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value - b.value;
  for (int i = 0; i < N; ++i) r.grad[i] = a.grad[i] - b.grad[i];
  for (int k = 0; k < N * N; ++k) r.hess[k] = a.hess[k] - b.hess[k];
  out = r;
}

// h_ij = (a h^b_ij + b h^a_ij) + (a_i b_j + b_i a_j); the grouping keeps the
// result exactly symmetric.
void mul(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  r.value = a.value * b.value;
  for (int i = 0; i < N; ++i) r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int k = i * N + j;
      r.hess[k] = (a.value * b.hess[k] + b.value * a.hess[k]) +
                  (a.grad[i] * b.grad[j] + b.grad[i] * a.grad[j]);
    }
  }
  out = r;
}

void div(const Jet2& a, const Jet2& b, Jet2& out) {
  Jet2 r;
  const double q = a.value / b.value;
  r.value = q;
  for (int i = 0; i < N; ++i) r.grad[i] = (a.grad[i] - q * b.grad[i]) / b.value;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int k = i * N + j;
      r.hess[k] = ((a.hess[k] - q * b.hess[k]) -
                   (r.grad[i] * b.grad[j] + b.grad[i] * r.grad[j])) /
                  b.value;
    }
  }
  out = r;
}

void chain(const Jet2& a, double f0, double f1, double f2, Jet2& out) {
  Jet2 r;
  r.value = f0;
  for (int i = 0; i < N; ++i) r.grad[i] = f1 * a.grad[i];
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int k = i * N + j;
      r.hess[k] = f1 * a.hess[k] + f2 * (a.grad[i] * a.grad[j]);
    }
  }
  out = r;
}

}  // namespace

const JetKernels& scalar_kernels() {
  static const JetKernels k{"scalar", &add, &sub, &mul, &div, &chain};
  return k;
}

}  // namespace sdgeom::simd
