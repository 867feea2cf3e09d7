#include <atomic>
#include <cstdlib>
#include <string>

#include "sdgeom/jet_kernels.hpp"

namespace sdgeom::simd {
namespace {

const JetKernels* by_name(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return avx2_kernels();
  if (name == "neon") return neon_kernels();
  return nullptr;
}

const JetKernels* best_available() {
  if (const JetKernels* k = avx2_kernels()) return k;
  if (const JetKernels* k = neon_kernels()) return k;
  return &scalar_kernels();
}

const JetKernels* initial_choice() {
  if (const char* env = std::getenv("SDGEOM_JET_KERNEL")) {
    if (const JetKernels* k = by_name(env)) return k;
  }
  return best_available();
}

std::atomic<const JetKernels*>& slot() {
  static std::atomic<const JetKernels*> active{initial_choice()};
  return active;
}

}  // namespace

std::vector<const JetKernels*> available_kernels() {
  std::vector<const JetKernels*> out{&scalar_kernels()};
  if (const JetKernels* k = avx2_kernels()) out.push_back(k);
  if (const JetKernels* k = neon_kernels()) out.push_back(k);
  return out;
}

const JetKernels& active_kernels() { return *slot().load(std::memory_order_relaxed); }

bool select_kernels(std::string_view name) {
  const JetKernels* k = by_name(name);
  if (k == nullptr) return false;
  slot().store(k, std::memory_order_relaxed);
  return true;
}

}  // namespace sdgeom::simd
