#include "dcmpf/noise.hpp"

#include <cmath>

#include "dcmpf/error.hpp"

namespace dcmpf {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::Invalid, "depolarizing probability must lie in [0, 1]");
}

}  // namespace

NoiseModel::NoiseModel(double p) : p_cnot(p) { check_probability(p); }

void depolarize_pair(DensityMatrix& rho, int q1, int q2, double p) {
  const int n = rho.n_qubits();
  if (q1 == q2) fail(ErrorCode::Site, "depolarize_pair needs two distinct sites");
  if (q1 < 0 || q2 < 0 || q1 >= n || q2 >= n) fail(ErrorCode::Site, "depolarize_pair site out of range");
  check_probability(p);
  if (p == 0.0) return;
  kernels::active().depolarize_pair(rho.entries(), n, q1, q2, p);
}

DensityMatrix run_noisy(const GateList& gates, DensityMatrix rho0, const NoiseModel& model) {
  if (gates.n_qubits != rho0.n_qubits()) fail(ErrorCode::Shape, "gate list size mismatch");
  check_probability(model.p_cnot);
  for (const auto& gate : gates.gates) {
    apply_gate(rho0, gate);
    if (gate.kind == GateKind::CNOT) depolarize_pair(rho0, gate.q0, gate.q1, model.p_cnot);
  }
  return rho0;
}

}  // namespace dcmpf
