#pragma once

// Kernel table for Jet2 arithmetic.
//
// Every variant evaluates the same expression tree in the same order and
// never contracts to FMA, so the scalar reference and the SIMD variants are
// bit-identical (tests/test_jet_kernels.cpp checks this on random jets).
//
// Selection happens once, on first use: the SDGEOM_JET_KERNEL environment
// variable may name a variant ("scalar", "avx2", "neon"); otherwise the best
// variant the CPU supports is chosen.

#include <string_view>
#include <vector>

#include "sdgeom/jet.hpp"

namespace sdgeom::simd {

struct JetKernels {
  const char* name;
  void (*add)(const Jet2& a, const Jet2& b, Jet2& out);
  void (*sub)(const Jet2& a, const Jet2& b, Jet2& out);
  void (*mul)(const Jet2& a, const Jet2& b, Jet2& out);
  void (*div)(const Jet2& a, const Jet2& b, Jet2& out);
  void (*chain)(const Jet2& a, double f0, double f1, double f2, Jet2& out);
};

const JetKernels& scalar_kernels();

/// nullptr when the variant is not compiled in or the CPU lacks support.
const JetKernels* avx2_kernels();
const JetKernels* neon_kernels();

/// All variants usable on this machine, scalar first.
std::vector<const JetKernels*> available_kernels();

const JetKernels& active_kernels();

/// Overrides the active variant; returns false for an unknown or
/// unsupported name. Intended for tests and benchmarks.
bool select_kernels(std::string_view name);

}  // namespace sdgeom::simd
