#include <doctest.h>

#include <cstring>

#include "sdgeom/jet_kernels.hpp"
#include "sdgeom/random.hpp"

using namespace sdgeom;

namespace {

Jet2 random_jet(SplitMix64& rng) {
  Jet2 j(rng.gaussian());
  if (j.value == 0.0) j.value = 1.0;
  for (auto& g : j.grad) g = rng.gaussian();
  for (auto& h : j.hess) h = rng.gaussian();
  return j;
}

bool same_bits(const Jet2& a, const Jet2& b) { return std::memcmp(&a, &b, sizeof(Jet2)) == 0; }

}  // namespace

TEST_CASE("every kernel variant matches the scalar reference bit for bit") {
  const simd::JetKernels& ref = simd::scalar_kernels();
  const auto variants = simd::available_kernels();
  REQUIRE(!variants.empty());
  CHECK(variants.front() == &ref);
  SplitMix64 rng(2024);
  for (const simd::JetKernels* k : variants) {
    CAPTURE(k->name);
    int bad = 0;
    for (int t = 0; t < 5000; ++t) {
      const Jet2 a = random_jet(rng), b = random_jet(rng);
      const double f0 = rng.gaussian(), f1 = rng.gaussian(), f2 = rng.gaussian();
      Jet2 x, y;
      ref.add(a, b, x), k->add(a, b, y), bad += !same_bits(x, y);
      ref.sub(a, b, x), k->sub(a, b, y), bad += !same_bits(x, y);
      ref.mul(a, b, x), k->mul(a, b, y), bad += !same_bits(x, y);
      ref.div(a, b, x), k->div(a, b, y), bad += !same_bits(x, y);
      ref.chain(a, f0, f1, f2, x), k->chain(a, f0, f1, f2, y), bad += !same_bits(x, y);
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("selection by name") {
  CHECK(simd::select_kernels("scalar"));
  CHECK(std::string(simd::active_kernels().name) == "scalar");
  CHECK_FALSE(simd::select_kernels("frobnicate"));
  CHECK(std::string(simd::active_kernels().name) == "scalar");
}
