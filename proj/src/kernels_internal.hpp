#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <span>

#include "dcmpf/kernels.hpp"

namespace dcmpf::kernels {

inline double parity_sign(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

inline cplx i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

namespace scalar {
void pauli_rotation(std::span<cplx> amps, PauliMasks p, double angle);
void apply_1q(std::span<cplx> amps, int qubit, const Mat2& m);
void apply_cnot(std::span<cplx> amps, int control, int target);
cplx pauli_expectation(std::span<const cplx> amps, PauliMasks p);
double norm_squared(std::span<const cplx> amps);
void depolarize_pair(std::span<cplx> rho, int n_qubits, int q1, int q2, double p);
cplx pauli_trace(std::span<const cplx> rho, int n_qubits, PauliMasks p);
}  // namespace scalar

namespace avx2 {
void pauli_rotation(std::span<cplx> amps, PauliMasks p, double angle);
void apply_1q(std::span<cplx> amps, int qubit, const Mat2& m);
cplx pauli_expectation(std::span<const cplx> amps, PauliMasks p);
double norm_squared(std::span<const cplx> amps);
void depolarize_pair(std::span<cplx> rho, int n_qubits, int q1, int q2, double p);
}  // namespace avx2

}  // namespace dcmpf::kernels
