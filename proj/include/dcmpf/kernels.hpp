#pragma once

// Amplitude-array kernels shared by the pure-state and density-matrix
// engines. Every kernel exists as a portable scalar reference; selected
// kernels also have AVX2 variants. The active table is chosen once at
// startup from CPU features and can be overridden with DCMPF_KERNELS=scalar.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace dcmpf::kernels {

using cplx = std::complex<double>;

// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

struct PauliMasks {
  std::uint64_t x = 0;  // bit-flip sites (X or Y)
  std::uint64_t z = 0;  // sign sites (Z or Y)
  int y_count = 0;
};

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  std::string_view name;

  // amps <- exp(-i angle P) amps
  void (*pauli_rotation)(std::span<cplx> amps, PauliMasks p, double angle);
  void (*apply_1q)(std::span<cplx> amps, int qubit, const Mat2& m);
  void (*apply_cnot)(std::span<cplx> amps, int control, int target);
  // <psi|P|psi>
  cplx (*pauli_expectation)(std::span<const cplx> amps, PauliMasks p);
  double (*norm_squared)(std::span<const cplx> amps);

  // Density-matrix kernels. The matrix is stored as a vector of length 4^n
  // with entry (row, col) at index row | (col << n).
  // rho <- (1-p) rho + p tr_{q1,q2}(rho) (x) I/4
  void (*depolarize_pair)(std::span<cplx> rho, int n_qubits, int q1, int q2, double p);
  // tr(P rho)
  cplx (*pauli_trace)(std::span<const cplx> rho, int n_qubits, PauliMasks p);
};

const KernelTable& scalar_table();
// Null when the AVX2 variants were not compiled in.
const KernelTable* avx2_table();

bool cpu_has_avx2();

// Table used by the simulator. Defaults to the best supported backend.
const KernelTable& active();
Backend active_backend();
// Throws dcmpf::Error(Invalid) when the backend is unavailable on this build
// or CPU.
void select_backend(Backend backend);
bool backend_available(Backend backend);

}  // namespace dcmpf::kernels
