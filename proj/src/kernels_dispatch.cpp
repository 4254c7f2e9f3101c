#include <atomic>
#include <cstdlib>
#include <string>

#include "dcmpf/error.hpp"
#include "dcmpf/kernels.hpp"
#include "kernels_internal.hpp"

namespace dcmpf::kernels {
namespace {

constexpr KernelTable kScalar{
    Backend::Scalar,        "scalar",
    scalar::pauli_rotation, scalar::apply_1q,          scalar::apply_cnot,
    scalar::pauli_expectation, scalar::norm_squared,
    scalar::depolarize_pair, scalar::pauli_trace,
};

#ifdef DCMPF_HAVE_AVX2
// CNOT is a pure permutation and the trace is a strided gather; both stay scalar.
constexpr KernelTable kAvx2{
    Backend::Avx2,        "avx2",
    avx2::pauli_rotation, avx2::apply_1q,        scalar::apply_cnot,
    avx2::pauli_expectation, avx2::norm_squared,
    avx2::depolarize_pair, scalar::pauli_trace,
};
#endif

const KernelTable* initial_table() {
  if (const char* env = std::getenv("DCMPF_KERNELS"); env && std::string(env) == "scalar") {
    return &kScalar;
  }
  if (const KernelTable* fast = avx2_table(); fast && cpu_has_avx2()) return fast;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#ifdef DCMPF_HAVE_AVX2
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool backend_available(Backend backend) {
  if (backend == Backend::Scalar) return true;
  return avx2_table() != nullptr && cpu_has_avx2();
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Backend active_backend() { return active().backend; }

void select_backend(Backend backend) {
  if (!backend_available(backend)) fail(ErrorCode::Invalid, "kernel backend not available");
  current().store(backend == Backend::Scalar ? &kScalar : avx2_table(), std::memory_order_release);
}

}  // namespace dcmpf::kernels
