#include <bit>
#include <cmath>

#include "dcmpf/kernels.hpp"
#include "kernels_internal.hpp"

namespace dcmpf::kernels::scalar {

void pauli_rotation(std::span<cplx> amps, PauliMasks p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::uint64_t dim = amps.size();
  if (p.x == 0) {
    const cplx plus(c, -s);   // exp(-i angle) on +1 eigenvectors
    const cplx minus(c, s);
    for (std::uint64_t k = 0; k < dim; ++k) {
      amps[k] *= parity_sign(k & p.z) > 0 ? plus : minus;
    }
    return;
  }
  const cplx f = cplx(0.0, -s) * i_power(p.y_count);
  const std::uint64_t half = std::uint64_t{1} << (std::bit_width(p.x) - 1);
  for (std::uint64_t base = 0; base < dim; base += 2 * half) {
    for (std::uint64_t k = base; k < base + half; ++k) {
      const std::uint64_t k2 = k ^ p.x;
      const cplx a = amps[k];
      const cplx b = amps[k2];
      amps[k] = c * a + f * parity_sign(k2 & p.z) * b;
      amps[k2] = c * b + f * parity_sign(k & p.z) * a;
    }
  }
}

void apply_1q(std::span<cplx> amps, int qubit, const Mat2& m) {
  const std::uint64_t half = std::uint64_t{1} << qubit;
  const std::uint64_t dim = amps.size();
  for (std::uint64_t base = 0; base < dim; base += 2 * half) {
    for (std::uint64_t k = base; k < base + half; ++k) {
      const cplx a = amps[k];
      const cplx b = amps[k + half];
      amps[k] = m[0] * a + m[1] * b;
      amps[k + half] = m[2] * a + m[3] * b;
    }
  }
}

void apply_cnot(std::span<cplx> amps, int control, int target) {
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  const std::uint64_t dim = amps.size();
  for (std::uint64_t k = 0; k < dim; ++k) {
    if ((k & cbit) && !(k & tbit)) std::swap(amps[k], amps[k | tbit]);
  }
}

cplx pauli_expectation(std::span<const cplx> amps, PauliMasks p) {
  const std::uint64_t dim = amps.size();
  cplx acc = 0.0;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t k2 = k ^ p.x;
    acc += std::conj(amps[k]) * (parity_sign(k2 & p.z) * amps[k2]);
  }
  return acc * i_power(p.y_count);
}

double norm_squared(std::span<const cplx> amps) {
  double acc = 0.0;
  for (const cplx& a : amps) acc += std::norm(a);
  return acc;
}

void depolarize_pair(std::span<cplx> rho, int n_qubits, int q1, int q2, double p) {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  const std::uint64_t pair = (std::uint64_t{1} << q1) | (std::uint64_t{1} << q2);
  const std::uint64_t offsets[4] = {0, std::uint64_t{1} << q1, std::uint64_t{1} << q2, pair};
  const double keep = 1.0 - p;
  for (std::uint64_t col = 0; col < dim; ++col) {
    if (col & pair) continue;
    for (std::uint64_t row = 0; row < dim; ++row) {
      if (row & pair) continue;
      cplx trace = 0.0;
      for (std::uint64_t o : offsets) trace += rho[(row | o) | ((col | o) << n_qubits)];
      for (std::uint64_t oc : offsets) {
        for (std::uint64_t orow : offsets) {
          cplx& entry = rho[(row | orow) | ((col | oc) << n_qubits)];
          entry *= keep;
          if (orow == oc) entry += 0.25 * p * trace;
        }
      }
    }
  }
}

cplx pauli_trace(std::span<const cplx> rho, int n_qubits, PauliMasks p) {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  cplx acc = 0.0;
  for (std::uint64_t k = 0; k < dim; ++k) {
    acc += parity_sign(k & p.z) * rho[k | ((k ^ p.x) << n_qubits)];
  }
  return acc * i_power(p.y_count);
}

}  // namespace dcmpf::kernels::scalar
